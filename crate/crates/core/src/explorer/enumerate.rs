//! Indexed candidate space for the census.
//!
//! Exhaustive mode numbers every pair `(A, A*)` with
//! `index = a_index · |A* choices| + astar_index`. `A` is tridiagonal with
//! all superdiagonal entries 1 (diagonal similarity fixes `A*` and preserves
//! everything the census measures) and nonzero subdiagonal; `A*` runs over
//! ordered tuples of distinct residues, of which only those with
//! `a*_0 < a*_d` are kept (reversing the basis swaps the two halves). Random
//! mode draws index `k` from a ChaCha stream keyed by `(seed, k)`, so every
//! index is reproducible on its own.

use std::collections::VecDeque;
use std::ops::Range;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::job::{CensusJob, Mode};
use crate::error::ExplorerError;
use crate::leonard::{primitive_idempotents, validate, LeonardCandidate};
use crate::linalg::{FieldSpec, Matrix, Scalar};

/// Exhaustive jobs above this size need `allow_expensive` unless
/// `d + 1 ≤ 4` and `p ≤ 7`.
fn within_guard(d: usize, p: u64) -> bool {
    d < 4 && p <= 7
}

#[derive(Clone, Debug)]
pub struct CandidateSpace {
    field: FieldSpec,
    p: u64,
    d: usize,
    mode: Mode,
    seed: u64,
    astar_choices: u64,
    len: u64,
}

fn falling_factorial(p: u64, k: usize) -> u128 {
    (0..k as u64).map(|i| (p - i) as u128).product()
}

impl CandidateSpace {
    pub fn new(job: &CensusJob) -> Result<Self, ExplorerError> {
        job.check()?;
        let p = job.modulus();
        let d = job.d;
        let astar = falling_factorial(p, d + 1);
        let a = (p as u128).pow(d as u32 + 1) * ((p - 1) as u128).pow(d as u32);
        let len = match job.mode {
            Mode::Exhaustive => {
                let total = a * astar;
                if !within_guard(d, p) && !job.allow_expensive {
                    return Err(ExplorerError::CostGuard {
                        d,
                        p,
                        estimate: total / 2,
                    });
                }
                u64::try_from(total)
                    .map_err(|_| ExplorerError::InvalidJob("candidate space too large".into()))?
            }
            Mode::RandomSample => job.sample_count,
        };
        Ok(CandidateSpace {
            field: job.field,
            p,
            d,
            mode: job.mode,
            seed: job.seed,
            astar_choices: astar as u64,
            len,
        })
    }

    /// Number of indices (pairs in exhaustive mode, draws in random mode).
    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn a_from_index(&self, mut idx: u64) -> Matrix {
        let (f, p, n) = (self.field, self.p, self.d + 1);
        let mut a = Matrix::zeros(f, n, n);
        for i in 0..n {
            a.set(i, i, f.from_i64((idx % p) as i64));
            idx /= p;
        }
        for i in 1..n {
            a.set(i, i - 1, f.from_i64((idx % (p - 1)) as i64 + 1));
            idx /= p - 1;
            a.set(i - 1, i, f.one());
        }
        a
    }

    /// Ordered tuple of distinct residues: digit `k` picks among the values
    /// not yet used, in increasing order.
    fn astar_from_index(&self, mut idx: u64) -> Vec<u64> {
        let mut pool: Vec<u64> = (0..self.p).collect();
        let mut out = Vec::with_capacity(self.d + 1);
        for _ in 0..=self.d {
            let r = pool.len() as u64;
            out.push(pool.remove((idx % r) as usize));
            idx /= r;
        }
        out
    }

    fn random_pair(&self, index: u64) -> (Matrix, Vec<u64>) {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        let (f, p, n) = (self.field, self.p, self.d + 1);
        let mut a = Matrix::zeros(f, n, n);
        for i in 0..n {
            a.set(i, i, f.from_i64(rng.gen_range(0..p) as i64));
        }
        for i in 1..n {
            a.set(i, i - 1, f.from_i64(rng.gen_range(1..p) as i64));
            a.set(i - 1, i, f.one());
        }
        let mut pool: Vec<u64> = (0..p).collect();
        pool.shuffle(&mut rng);
        let mut diag: Vec<u64> = pool[..n].to_vec();
        if diag[0] > diag[n - 1] {
            diag.reverse();
        }
        (a, diag)
    }

    /// Candidates at the given indices, in index order. Each pair yields one
    /// candidate per eigenvalue ordering that validates.
    pub fn scan(&self, range: Range<u64>) -> Vec<(u64, LeonardCandidate)> {
        let mut cache = SpectralCache::default();
        let mut out = Vec::new();
        for index in range.start..range.end.min(self.len) {
            self.candidates_at(index, &mut cache, &mut out);
        }
        out
    }

    fn candidates_at(
        &self,
        index: u64,
        cache: &mut SpectralCache,
        out: &mut Vec<(u64, LeonardCandidate)>,
    ) {
        let (key, a, diag) = match self.mode {
            Mode::Exhaustive => {
                let a_idx = index / self.astar_choices;
                let diag = self.astar_from_index(index % self.astar_choices);
                if diag[0] > diag[self.d] {
                    return;
                }
                if cache.key == Some(a_idx) {
                    (a_idx, None, diag)
                } else {
                    (a_idx, Some(self.a_from_index(a_idx)), diag)
                }
            }
            Mode::RandomSample => {
                let (a, diag) = self.random_pair(index);
                (index, Some(a), diag)
            }
        };
        if let Some(a) = a {
            cache.key = Some(key);
            cache.data = Spectral::of(&a, self.field);
        }
        let Some(sp) = &cache.data else {
            return;
        };
        let f = self.field;
        let theta_stars: Vec<Scalar> = diag.iter().map(|&x| f.from_i64(x as i64)).collect();
        // pairing[i][j] = row(E_i)·A*·col(E_j); E_i A* E_j = 0 iff it vanishes.
        let n = self.d + 1;
        let pairing: Vec<Vec<bool>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = f.zero();
                        for k in 0..n {
                            acc = &acc + &(&(&sp.rows[i][k] * &theta_stars[k]) * &sp.cols[j][k]);
                        }
                        !acc.is_zero()
                    })
                    .collect()
            })
            .collect();
        let a_star = Matrix::diagonal(f, &theta_stars).expect("field-consistent diagonal");
        for perm in permutations(n) {
            let ok = (0..n).all(|x| {
                (0..n).all(|y| match x.abs_diff(y) {
                    0 => true,
                    1 => pairing[perm[x]][perm[y]],
                    _ => !pairing[perm[x]][perm[y]],
                })
            });
            if !ok {
                continue;
            }
            let c = LeonardCandidate {
                d: self.d,
                a: sp.a.clone(),
                a_star: a_star.clone(),
                thetas: perm.iter().map(|&k| sp.roots[k].clone()).collect(),
                theta_stars: theta_stars.clone(),
            };
            if validate(&c).is_ok() {
                out.push((index, c));
            }
        }
    }
}

#[derive(Default)]
struct SpectralCache {
    key: Option<u64>,
    data: Option<Spectral>,
}

/// Split spectrum of `A` with a nonzero row and column of each idempotent.
struct Spectral {
    a: Matrix,
    roots: Vec<Scalar>,
    rows: Vec<Vec<Scalar>>,
    cols: Vec<Vec<Scalar>>,
}

impl Spectral {
    fn of(a: &Matrix, f: FieldSpec) -> Option<Spectral> {
        let roots = split_spectrum(a, f)?;
        let es = primitive_idempotents(a, &roots).ok()?;
        let mut rows = Vec::with_capacity(es.len());
        let mut cols = Vec::with_capacity(es.len());
        for e in &es {
            let (r, c, _) = e.first_nonzero()?;
            rows.push(e.row(r).to_vec());
            cols.push(e.column(c));
        }
        Some(Spectral {
            a: a.clone(),
            roots,
            rows,
            cols,
        })
    }
}

/// Roots of `det(xI − A)` for tridiagonal `A`, found by evaluating the
/// three-term recurrence at every field element. `None` unless there are
/// `d + 1` distinct roots.
pub fn split_spectrum(a: &Matrix, f: FieldSpec) -> Option<Vec<Scalar>> {
    let n = a.rows();
    let roots: Vec<Scalar> = f
        .elements()?
        .filter(|x| {
            let mut prev = f.one();
            let mut cur = x - a.get(0, 0);
            for k in 1..n {
                let off = a.get(k - 1, k) * a.get(k, k - 1);
                let next = &(&(x - a.get(k, k)) * &cur) - &(&off * &prev);
                prev = std::mem::replace(&mut cur, next);
            }
            cur.is_zero()
        })
        .collect();
    (roots.len() == n).then_some(roots)
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            return out;
        };
        let j = (i + 1..n)
            .rev()
            .find(|&j| cur[j] > cur[i])
            .expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

/// Lazily streams `(index, candidate)` pairs for a job.
pub struct CandidateStream {
    space: CandidateSpace,
    next: u64,
    cache: SpectralCache,
    buffer: VecDeque<(u64, LeonardCandidate)>,
}

impl Iterator for CandidateStream {
    type Item = (u64, LeonardCandidate);

    fn next(&mut self) -> Option<Self::Item> {
        while self.buffer.is_empty() && self.next < self.space.len {
            let mut out = Vec::new();
            self.space
                .candidates_at(self.next, &mut self.cache, &mut out);
            self.buffer.extend(out);
            self.next += 1;
        }
        self.buffer.pop_front()
    }
}

/// Every validated candidate of a job, in index order.
pub fn enumerate_candidates(job: &CensusJob) -> Result<CandidateStream, ExplorerError> {
    Ok(CandidateStream {
        space: CandidateSpace::new(job)?,
        next: 0,
        cache: SpectralCache::default(),
        buffer: VecDeque::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_order() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![0, 1, 2]);
        assert_eq!(p[5], vec![2, 1, 0]);
        assert_eq!(permutations(1), vec![vec![0]]);
    }

    #[test]
    fn krawtchouk_spectrum_splits() {
        let f = FieldSpec::Prime(7);
        let c = crate::leonard::krawtchouk_family(2, f).unwrap();
        let mut roots = split_spectrum(&c.a, f).unwrap();
        roots.sort_by_key(|s| s.to_string().parse::<u64>().unwrap());
        let want: Vec<Scalar> = [0, 2, 5].iter().map(|&x| f.from_i64(x)).collect();
        assert_eq!(roots, want);
    }

    #[test]
    fn cost_guard() {
        let mut job = CensusJob::exhaustive(11, 2).unwrap();
        assert!(matches!(
            CandidateSpace::new(&job),
            Err(ExplorerError::CostGuard { .. })
        ));
        job.allow_expensive = true;
        assert!(CandidateSpace::new(&job).is_ok());
        assert!(CandidateSpace::new(&CensusJob::random(11, 2, 10, 0).unwrap()).is_ok());
    }

    #[test]
    fn astar_digits_cover_injective_tuples() {
        let space = CandidateSpace::new(&CensusJob::exhaustive(5, 2).unwrap()).unwrap();
        let mut seen: Vec<Vec<u64>> = (0..space.astar_choices)
            .map(|k| space.astar_from_index(k))
            .collect();
        assert_eq!(seen.len(), 60);
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 60);
        assert!(seen
            .iter()
            .all(|t| t[0] != t[1] && t[1] != t[2] && t[0] != t[2]));
    }
}
