//! Table-driven arithmetic in F_q for prime powers q, with degree-2 and
//! degree-3 extensions and their embeddings.
//!
//! Elements are addressed by an index in `[0, q)`: index 0 is zero and
//! index `k >= 1` is `g^(k-1)` for the field's fixed generator `g`, so index
//! 1 is the multiplicative identity. Each element also has an additive
//! *code*: the integer `sum c_i p^i` of its coefficient vector in the
//! polynomial basis `F_p[t]/(m(t))`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest base field accepted by [`Field::new`].
pub const MAX_BASE_FIELD: u32 = 64;
/// Largest table size accepted for extension fields.
pub const MAX_TABLE_SIZE: u32 = 1 << 18;

/// An element of a finite field, identified by its index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Arithmetic tables for one finite field.
#[derive(Clone, Debug)]
pub struct Field {
    q: u32,
    p: u32,
    v: u32,
    /// Coefficients `c_0..=c_v` of the monic modulus over F_p.
    modulus: Vec<u32>,
    /// `exp_code[k]` is the code of `g^k`, `k < q - 1`.
    exp_code: Vec<u32>,
    /// Inverse of the code map: code -> index.
    code_index: Vec<u32>,
    /// `zech[k]` is the index of `1 + g^k`.
    zech: Vec<u32>,
    /// Full `q x q` tables of indices, present for base-size fields.
    add_table: Option<Vec<u8>>,
    mul_table: Option<Vec<u8>>,
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let (mut rest, mut v) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        v += 1;
    }
    (rest == 1).then_some((p, v))
}

/// Polynomials over F_p as little-endian coefficient vectors.
fn code_to_digits(mut code: u32, p: u32, v: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(v as usize);
    for _ in 0..v {
        out.push(code % p);
        code /= p;
    }
    out
}

fn digits_to_code(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Product of two codes modulo the monic `modulus` of degree `v`.
fn mul_codes(a: u32, b: u32, modulus: &[u32], p: u32) -> u32 {
    let v = modulus.len() - 1;
    let da = code_to_digits(a, p, v as u32);
    let db = code_to_digits(b, p, v as u32);
    let mut prod = vec![0u32; 2 * v];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (v..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        // subtract c * t^(deg-v) * modulus
        for (k, &m) in modulus.iter().enumerate() {
            let idx = deg - v + k;
            prod[idx] = (prod[idx] + (p - c) * m % p) % p;
        }
    }
    digits_to_code(&prod[..v], p)
}

fn poly_rem(mut a: Vec<u32>, b: &[u32], p: u32) -> Vec<u32> {
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while a.len() > db && !a.is_empty() {
        let deg = a.len() - 1;
        let c = a[deg] * lead_inv % p;
        if c != 0 {
            for (k, &m) in b.iter().enumerate() {
                let idx = deg - db + k;
                a[idx] = (a[idx] + (p - c) * m % p) % p;
            }
        }
        a.pop();
        while a.last() == Some(&0) {
            a.pop();
        }
    }
    a
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| a * x % p == 1).expect("nonzero residue")
}

/// True when the monic polynomial (coefficients `c_0..=c_v`) has no monic
/// factor of degree `1..=v/2`.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let v = poly.len() - 1;
    for deg in 1..=v / 2 {
        let count = p.pow(deg as u32);
        for low in 0..count {
            let mut div = code_to_digits(low, p, deg as u32);
            div.push(1);
            if poly_rem(poly.to_vec(), &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least monic irreducible of degree `v` over F_p, with
/// the coefficient of `t^(v-1)` most significant.
fn least_irreducible(p: u32, v: u32) -> Vec<u32> {
    let count = p.pow(v);
    for low in 0..count {
        let mut poly = code_to_digits(low, p, v);
        poly.push(1);
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

impl Field {
    /// Builds F_q for a prime power `2 <= q <= 64`.
    pub fn new(q: u64) -> Result<Field> {
        if q < 2 || q > MAX_BASE_FIELD as u64 {
            if q >= 2 && q <= u32::MAX as u64 && prime_power(q as u32).is_none() {
                return Err(Error::NotPrimePower(q));
            }
            return Err(Error::FieldSizeOutOfRange { q, max: MAX_BASE_FIELD as u64 });
        }
        Self::build(q as u32, None)
    }

    /// Builds F_q using an explicit monic modulus `c_0..=c_v` over F_p.
    pub fn with_modulus(q: u64, modulus: &[u32]) -> Result<Field> {
        if q < 2 || q > MAX_BASE_FIELD as u64 {
            return Err(Error::FieldSizeOutOfRange { q, max: MAX_BASE_FIELD as u64 });
        }
        Self::build(q as u32, Some(modulus.to_vec()))
    }

    fn build(q: u32, modulus: Option<Vec<u32>>) -> Result<Field> {
        let (p, v) = prime_power(q).ok_or(Error::NotPrimePower(q as u64))?;
        let modulus = match modulus {
            Some(m) => {
                let valid = m.len() == v as usize + 1
                    && m[v as usize] == 1
                    && m.iter().all(|&c| c < p)
                    && is_irreducible(&m, p);
                if !valid {
                    return Err(Error::InvalidArgument(format!(
                        "modulus {m:?} is not a monic irreducible of degree {v} over F_{p}"
                    )));
                }
                m
            }
            None => least_irreducible(p, v),
        };
        let order = q - 1;
        let generator = (1..q)
            .find(|&c| {
                let mut x = c;
                let mut k = 1;
                while x != 1 {
                    x = mul_codes(x, c, &modulus, p);
                    k += 1;
                }
                k == order
            })
            .expect("the multiplicative group is cyclic");
        let mut exp_code = Vec::with_capacity(order as usize);
        let mut x = 1;
        for _ in 0..order {
            exp_code.push(x);
            x = mul_codes(x, generator, &modulus, p);
        }
        let mut code_index = vec![0u32; q as usize];
        for (k, &c) in exp_code.iter().enumerate() {
            code_index[c as usize] = k as u32 + 1;
        }
        // 1 + g^k in codes: add the constant digit.
        let zech = exp_code
            .iter()
            .map(|&c| {
                let low = c % p;
                let sum = c - low + (low + 1) % p;
                code_index[sum as usize]
            })
            .collect();
        let mut field = Field { q, p, v, modulus, exp_code, code_index, zech, add_table: None, mul_table: None };
        if q <= MAX_BASE_FIELD {
            let n = q as usize;
            let mut add = vec![0u8; n * n];
            let mut mul = vec![0u8; n * n];
            for a in 0..q {
                for b in 0..q {
                    let (x, y) = (FieldElement(a), FieldElement(b));
                    add[a as usize * n + b as usize] = field.zech_add(x, y).0 as u8;
                    mul[a as usize * n + b as usize] = field.log_mul(x, y).0 as u8;
                }
            }
            field.add_table = Some(add);
            field.mul_table = Some(mul);
        }
        Ok(field)
    }

    /// Field size.
    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Characteristic.
    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Degree over the prime field.
    #[inline]
    pub fn v(&self) -> u32 {
        self.v
    }

    /// Modulus coefficients `c_0..=c_v`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Human-readable modulus in the variable `t`, highest degree first.
    pub fn modulus_string(&self) -> String {
        let mut terms = Vec::new();
        for (deg, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match deg {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{deg}"),
            };
            terms.push(match (c, deg) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        terms.join("+")
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.q).map(FieldElement)
    }

    /// Nonzero elements in index order.
    pub fn nonzero(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (1..self.q).map(FieldElement)
    }

    /// The fixed generator of the multiplicative group.
    pub fn generator(&self) -> FieldElement {
        if self.q == 2 {
            FieldElement::ONE
        } else {
            FieldElement(2)
        }
    }

    /// Additive code of an element.
    #[inline]
    pub fn code(&self, a: FieldElement) -> u32 {
        if a.0 == 0 {
            0
        } else {
            self.exp_code[a.0 as usize - 1]
        }
    }

    /// Element with the given additive code.
    #[inline]
    pub fn from_code(&self, code: u32) -> FieldElement {
        FieldElement(self.code_index[code as usize])
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_code(n.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    fn zech_add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let order = self.q - 1;
        let (la, lb) = (a.0 - 1, b.0 - 1);
        let k = (lb + order - la) % order;
        let z = self.zech[k as usize];
        if z == 0 {
            FieldElement::ZERO
        } else {
            FieldElement((la + z - 1) % order + 1)
        }
    }

    #[inline]
    fn log_mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let order = self.q - 1;
        FieldElement((a.0 - 1 + b.0 - 1) % order + 1)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.add_table {
            Some(t) => FieldElement(t[(a.0 * self.q + b.0) as usize] as u32),
            None => self.zech_add(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.mul_table {
            Some(t) => FieldElement(t[(a.0 * self.q + b.0) as usize] as u32),
            None => self.log_mul(a, b),
        }
    }

    /// `-1` as an element.
    #[inline]
    pub fn minus_one(&self) -> FieldElement {
        if self.p == 2 {
            FieldElement::ONE
        } else {
            FieldElement((self.q - 1) / 2 + 1)
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.mul(a, self.minus_one())
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let order = self.q - 1;
        Ok(FieldElement((order - (a.0 - 1)) % order + 1))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`; the exponent is reduced mod `q - 1` for nonzero `a`, and
    /// `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement> {
        if a.0 == 0 {
            return match e.cmp(&0) {
                std::cmp::Ordering::Equal => Ok(FieldElement::ONE),
                std::cmp::Ordering::Greater => Ok(FieldElement::ZERO),
                std::cmp::Ordering::Less => Err(Error::DivisionByZero),
            };
        }
        let order = (self.q - 1) as i64;
        let log = ((a.0 - 1) as i64 * e.rem_euclid(order)).rem_euclid(order);
        Ok(FieldElement(log as u32 + 1))
    }

    /// Discrete logarithm base the generator, for nonzero elements.
    #[inline]
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (a.0 != 0).then(|| a.0 - 1)
    }

    /// `g^k`.
    #[inline]
    pub fn exp(&self, k: u64) -> FieldElement {
        FieldElement((k % (self.q as u64 - 1)) as u32 + 1)
    }

    /// Frobenius `a -> a^p`.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.p as i64).expect("nonnegative exponent")
    }

    /// Builds F_{q^degree} together with an embedding of `self`.
    pub fn extend(&self, degree: u32) -> Result<Extension> {
        if !(2..=3).contains(&degree) {
            return Err(Error::UnsupportedDegree(degree));
        }
        let size = (self.q as u64).pow(degree);
        if size > MAX_TABLE_SIZE as u64 {
            return Err(Error::TableOverflow { required: size, limit: MAX_TABLE_SIZE as u64 });
        }
        let big = Field::build(size as u32, None)?;
        let small_order = (self.q - 1) as u64;
        let big_order = size - 1;
        let step = big_order / small_order;
        // Candidate images of the generator: elements of order q - 1.
        for j in 1..=small_order {
            if num_integer::gcd(j, small_order) != 1 {
                continue;
            }
            let h_log = (step * j) % big_order;
            let image = |a: FieldElement| -> FieldElement {
                match self.log(a) {
                    None => FieldElement::ZERO,
                    Some(k) => big.exp(h_log * k as u64),
                }
            };
            let additive = (0..small_order).all(|k| {
                let lhs = image(FieldElement(self.zech[k as usize]));
                let rhs = big.add(FieldElement::ONE, big.exp(h_log * k));
                lhs == rhs
            });
            if additive {
                let embed: Vec<FieldElement> = self.elements().map(image).collect();
                let mut restrict = vec![u32::MAX; size as usize];
                for (i, e) in embed.iter().enumerate() {
                    restrict[e.0 as usize] = i as u32;
                }
                return Ok(Extension { field: big, degree, base_q: self.q, embed, restrict });
            }
        }
        unreachable!("every extension of F_q contains a copy of F_q")
    }
}

/// An extension field F_{q^k} with its embedding of F_q.
#[derive(Clone, Debug)]
pub struct Extension {
    pub field: Field,
    pub degree: u32,
    base_q: u32,
    embed: Vec<FieldElement>,
    restrict: Vec<u32>,
}

impl Extension {
    /// Image of a base-field element.
    #[inline]
    pub fn embed(&self, a: FieldElement) -> FieldElement {
        self.embed[a.0 as usize]
    }

    /// Preimage of an extension element lying in the embedded subfield.
    #[inline]
    pub fn restrict(&self, a: FieldElement) -> Option<FieldElement> {
        let r = self.restrict[a.0 as usize];
        (r != u32::MAX).then_some(FieldElement(r))
    }

    /// The relative Frobenius `a -> a^q`, generating Gal(F_{q^k}/F_q).
    pub fn conjugate(&self, a: FieldElement) -> FieldElement {
        self.field.pow(a, self.base_q as i64).expect("nonnegative exponent")
    }

    /// Size of the base field.
    pub fn base_q(&self) -> u32 {
        self.base_q
    }
}
