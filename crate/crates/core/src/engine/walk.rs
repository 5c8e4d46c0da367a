//! Incremental enumeration of the projective classes of a row space.
//!
//! Classes are visited in [`ClassSpace`](crate::geometry::ClassSpace) order.
//! Symbols are kept as additive codes, so moving to the next class adds a
//! precomputed multiple of one generator row per carried sub-digit instead
//! of re-encoding the message.

use std::ops::Range;

use rayon::prelude::*;

use crate::geometry::ClassSpace;
use crate::gf::Field;
use crate::linalg::Row;

/// Vector addition on additive codes.
#[derive(Clone, Debug)]
enum Adder {
    /// Characteristic 2.
    Xor,
    /// Prime field F_p.
    ModP(u8),
    /// General case: `q x q` table of code sums.
    Table { q: usize, table: Vec<u8> },
}

impl Adder {
    fn new(field: &Field) -> Adder {
        if field.p() == 2 {
            Adder::Xor
        } else if field.v() == 1 {
            Adder::ModP(field.p() as u8)
        } else {
            let q = field.q() as usize;
            let mut table = vec![0u8; q * q];
            for a in 0..q {
                for b in 0..q {
                    let s = field.add(field.from_code(a as u32), field.from_code(b as u32));
                    table[a * q + b] = field.code(s) as u8;
                }
            }
            Adder::Table { q, table }
        }
    }

    #[inline]
    fn add_assign(&self, dst: &mut [u8], src: &[u8]) {
        match self {
            Adder::Xor => dst.iter_mut().zip(src).for_each(|(d, &s)| *d ^= s),
            Adder::ModP(p) => dst.iter_mut().zip(src).for_each(|(d, &s)| {
                let t = *d + s;
                *d = if t >= *p { t - *p } else { t };
            }),
            Adder::Table { q, table } => {
                dst.iter_mut().zip(src).for_each(|(d, &s)| *d = table[*d as usize * q + s as usize])
            }
        }
    }
}

/// Enumerates the nonzero classes `{ sum m_i G_i }` up to scalars.
#[derive(Clone, Debug)]
pub struct ClassWalker {
    q: u32,
    p: u32,
    v: u32,
    width: usize,
    space: ClassSpace,
    /// `steps[r][i]` is `beta_i * G_r` in codes, `beta_i` the element of
    /// code `p^i`.
    steps: Vec<Vec<Vec<u8>>>,
    adder: Adder,
}

impl ClassWalker {
    pub fn new(field: &Field, rows: &[Row]) -> ClassWalker {
        let width = rows.first().map_or(0, |r| r.len());
        let betas: Vec<_> = (0..field.v()).map(|i| field.from_code(field.p().pow(i))).collect();
        let steps = rows
            .iter()
            .map(|row| {
                betas.iter().map(|&b| row.iter().map(|&x| field.code(field.mul(b, x)) as u8).collect()).collect()
            })
            .collect();
        ClassWalker {
            q: field.q(),
            p: field.p(),
            v: field.v(),
            width,
            space: ClassSpace::new(field.q(), rows.len()),
            steps,
            adder: Adder::new(field),
        }
    }

    /// Number of classes, `(q^k - 1)/(q - 1)`.
    pub fn count(&self) -> u64 {
        self.space.count()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dimension(&self) -> usize {
        self.steps.len()
    }

    /// Adds `c * G_row` for the element `c` with additive code `code`.
    fn add_multiple(&self, sym: &mut [u8], row: usize, code: u32) {
        let mut c = code;
        for i in 0..self.v as usize {
            for _ in 0..c % self.p {
                self.adder.add_assign(sym, &self.steps[row][i]);
            }
            c /= self.p;
        }
    }

    /// Calls `visit(class_index, symbols)` for each class in `range`.
    pub fn walk(&self, range: Range<u64>, mut visit: impl FnMut(u64, &[u8])) {
        let k = self.dimension();
        let q = self.q as u64;
        let mut sym = vec![0u8; self.width];
        let mut digits = vec![0u32; k];
        let mut index = range.start;
        while index < range.end {
            let (lead, offset) = self.space.locate(index);
            let seg_end = (index - offset + self.space.segment_len(lead)).min(range.end);
            sym.iter_mut().for_each(|s| *s = 0);
            self.add_multiple(&mut sym, lead, 1);
            let mut rest = offset;
            for r in (lead + 1..k).rev() {
                digits[r] = (rest % q) as u32;
                rest /= q;
                self.add_multiple(&mut sym, r, digits[r]);
            }
            loop {
                visit(index, &sym);
                index += 1;
                if index == seg_end {
                    break;
                }
                let mut r = k - 1;
                loop {
                    let d = digits[r];
                    let mut sub = d;
                    for i in 0..self.v as usize {
                        self.adder.add_assign(&mut sym, &self.steps[r][i]);
                        if sub % self.p != self.p - 1 {
                            break;
                        }
                        sub /= self.p;
                    }
                    digits[r] = (d + 1) % self.q;
                    if digits[r] != 0 {
                        break;
                    }
                    r -= 1;
                }
            }
        }
    }

    /// Parallel fold over all classes: each chunk of `chunk` consecutive
    /// classes is folded into a fresh accumulator and the results merged.
    pub fn par_fold<A, I, V, M>(&self, chunk: u64, init: I, visit: V, merge: M) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        V: Fn(&mut A, u64, &[u8]) + Sync + Send,
        M: Fn(A, A) -> A + Sync + Send,
    {
        let total = self.count();
        let chunks = total.div_ceil(chunk.max(1));
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut acc = init();
                let range = c * chunk..((c + 1) * chunk).min(total);
                self.walk(range, |i, s| visit(&mut acc, i, s));
                acc
            })
            .reduce(&init, &merge)
    }
}

/// Bit `i` set iff `sym[i]` is zero; `sym.len() <= 128`.
#[inline]
pub fn zero_bits(sym: &[u8]) -> u128 {
    let mut bits = 0u128;
    for (i, &s) in sym.iter().enumerate() {
        bits |= ((s == 0) as u128) << i;
    }
    bits
}
