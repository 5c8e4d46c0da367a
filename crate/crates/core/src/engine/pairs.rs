//! Quadratic pair-scan kernels over per-class bit masks.
//!
//! Every kernel partitions the outer index into contiguous chunks handled
//! by rayon workers with private histograms; merging is a plain sum, so the
//! result does not depend on the number of threads.

use rayon::prelude::*;

use crate::mask::MaskWord;

const CHUNK: usize = 64;

fn merge(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
    a
}

/// Per-class data for the census kernels.
///
/// Two classes share a component iff their `lines` masks intersect or their
/// `tags` are equal; tags of classes without a conic component must be
/// unique across every list scanned together.
#[derive(Clone, Debug, Default)]
pub struct PairData<T> {
    pub zeros: Vec<T>,
    pub lines: Vec<T>,
    pub tags: Vec<u32>,
}

impl<T: MaskWord> PairData<T> {
    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }
}

/// Histogram of `|a_i & a_j|` over unordered pairs `i < j`.
pub fn intersect_within<T: MaskWord>(masks: &[T], bins: usize) -> Vec<u64> {
    let n = masks.len();
    (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut hist = vec![0u64; bins];
            for i in c * CHUNK..((c + 1) * CHUNK).min(n) {
                let a = masks[i];
                for &b in &masks[i + 1..] {
                    hist[(a & b).ones() as usize] += 1;
                }
            }
            hist
        })
        .reduce(|| vec![0u64; bins], merge)
}

/// Histogram of `|a_i & b_j|` over all pairs.
pub fn intersect_across<T: MaskWord>(a: &[T], b: &[T], bins: usize) -> Vec<u64> {
    (0..a.len().div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut hist = vec![0u64; bins];
            for &x in &a[c * CHUNK..((c + 1) * CHUNK).min(a.len())] {
                for &y in b {
                    hist[(x & y).ones() as usize] += 1;
                }
            }
            hist
        })
        .reduce(|| vec![0u64; bins], merge)
}

/// `(no_share, share)` histograms of common-zero counts over unordered
/// pairs `i < j` of one list.
pub fn census_within<T: MaskWord>(data: &PairData<T>, bins: usize) -> (Vec<u64>, Vec<u64>) {
    let n = data.len();
    let flat = (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut hist = vec![0u64; 2 * bins];
            for i in c * CHUNK..((c + 1) * CHUNK).min(n) {
                let (zi, li, ti) = (data.zeros[i], data.lines[i], data.tags[i]);
                let rest = i + 1..n;
                for ((&zj, &lj), &tj) in
                    data.zeros[rest.clone()].iter().zip(&data.lines[rest.clone()]).zip(&data.tags[rest])
                {
                    let share = ((li & lj) != T::default()) | (ti == tj);
                    hist[share as usize * bins + (zi & zj).ones() as usize] += 1;
                }
            }
            hist
        })
        .reduce(|| vec![0u64; 2 * bins], merge);
    (flat[..bins].to_vec(), flat[bins..].to_vec())
}

/// `(no_share, share)` histograms over all pairs `(a_i, b_j)`.
pub fn census_across<T: MaskWord>(a: &PairData<T>, b: &PairData<T>, bins: usize) -> (Vec<u64>, Vec<u64>) {
    let flat = (0..a.len().div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut hist = vec![0u64; 2 * bins];
            for i in c * CHUNK..((c + 1) * CHUNK).min(a.len()) {
                let (zi, li, ti) = (a.zeros[i], a.lines[i], a.tags[i]);
                for ((&zj, &lj), &tj) in b.zeros.iter().zip(&b.lines).zip(&b.tags) {
                    let share = ((li & lj) != T::default()) | (ti == tj);
                    hist[share as usize * bins + (zi & zj).ones() as usize] += 1;
                }
            }
            hist
        })
        .reduce(|| vec![0u64; 2 * bins], merge);
    (flat[..bins].to_vec(), flat[bins..].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn kernels_match_naive_loops(xs in proptest::collection::vec(any::<u32>(), 0..150),
                                     ys in proptest::collection::vec(any::<u32>(), 0..90)) {
            let bins = 33;
            let mut within = vec![0u64; bins];
            for i in 0..xs.len() {
                for j in i + 1..xs.len() {
                    within[(xs[i] & xs[j]).count_ones() as usize] += 1;
                }
            }
            prop_assert_eq!(intersect_within(&xs, bins), within);
            let mut across = vec![0u64; bins];
            for &x in &xs {
                for &y in &ys {
                    across[(x & y).count_ones() as usize] += 1;
                }
            }
            prop_assert_eq!(intersect_across(&xs, &ys, bins), across);

            let lines: Vec<u32> = xs.iter().map(|x| x >> 29).collect();
            let tags: Vec<u32> = xs.iter().enumerate().map(|(i, x)| if x % 5 == 0 { 1 } else { 100 + i as u32 }).collect();
            let data = PairData { zeros: xs.clone(), lines, tags };
            let (free, shared) = census_within(&data, bins);
            let mut nf = vec![0u64; bins];
            let mut ns = vec![0u64; bins];
            for i in 0..xs.len() {
                for j in i + 1..xs.len() {
                    let k = (xs[i] & xs[j]).count_ones() as usize;
                    if (data.lines[i] & data.lines[j]) != 0 || data.tags[i] == data.tags[j] {
                        ns[k] += 1;
                    } else {
                        nf[k] += 1;
                    }
                }
            }
            prop_assert_eq!(free, nf);
            prop_assert_eq!(shared, ns);
        }
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let xs: Vec<u64> = (0..3000u64).map(|i| i.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 7).collect();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| intersect_within(&xs, 65))
        };
        assert_eq!(run(1), run(4));
    }
}
