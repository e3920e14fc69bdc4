//! Weyl-groupoid reflections and bounded root-system enumeration.
//!
//! The enumeration walks the groupoid by BFS. A state is a pair (braiding
//! matrix, linear map back to the base object); the positive roots at the
//! base are the pullbacks of simple roots along all discovered morphisms.
//! Objects are canonicalized by the pair (diagonal, symmetrization), which
//! determines the object up to twist-equivalence. The search is capped and a
//! cap hit is reported as `NotFiniteWithinCap`, never as a claim of
//! infiniteness.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::braiding::{BraidingError, BraidingMatrix, MultiDegree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootsysError {
    #[error(transparent)]
    Braiding(#[from] BraidingError),
    #[error("root membership is undefined: enumeration hit the cap ({0})")]
    NotFinite(String),
}

/// Search caps for the groupoid walk.
#[derive(Debug, Clone, Copy)]
pub struct RootCaps {
    /// maximum number of groupoid states (object, map) explored
    pub max_states: usize,
    /// maximum height (coordinate sum) of a discovered root
    pub max_height: u32,
    /// cap handed to `cartan_entry`
    pub cartan_cap: u64,
}

impl Default for RootCaps {
    fn default() -> Self {
        RootCaps {
            max_states: 1000,
            max_height: 60,
            cartan_cap: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootsResult {
    /// The full positive root set at the base object, sorted.
    Finite(Vec<MultiDegree>),
    /// Enumeration exceeded a cap; under the finiteness conjecture this is
    /// read as infinite GK-dimension, and reports must state that
    /// conditionality.
    NotFiniteWithinCap { reason: String },
}

impl RootsResult {
    pub fn is_finite(&self) -> bool {
        matches!(self, RootsResult::Finite(_))
    }
}

/// `s_i` on degree vectors: `s_i(alpha_j) = alpha_j - c_ij alpha_i`.
fn reflection_map(cartan_row: &[i64], i: usize, v: &[i64]) -> Vec<i64> {
    let dot: i64 = cartan_row.iter().zip(v.iter()).map(|(c, x)| c * x).sum();
    let mut w = v.to_vec();
    w[i] -= dot;
    w
}

/// The reflected braiding matrix at vertex `i`: `q'_jk = q(s_i a_j, s_i a_k)`.
pub fn reflect(
    q: &BraidingMatrix,
    i: usize,
    cartan_cap: u64,
) -> Result<BraidingMatrix, BraidingError> {
    let rank = q.rank();
    let mut cartan_row = vec![0i64; rank];
    cartan_row[i] = 2;
    for j in 0..rank {
        if j != i {
            cartan_row[j] = q.cartan_entry(i, j, cartan_cap)?;
        }
    }
    let images: Vec<Vec<i64>> = (0..rank)
        .map(|j| {
            let mut e = vec![0i64; rank];
            e[j] = 1;
            reflection_map(&cartan_row, i, &e)
        })
        .collect();
    let mut exp = vec![vec![0i64; rank]; rank];
    for j in 0..rank {
        for k in 0..rank {
            let r = q.bilinear_signed(&images[j], &images[k]);
            let order = r.order();
            assert!(q.conductor() % order == 0);
            exp[j][k] = (r.exponent() * (q.conductor() / order)) as i64;
        }
    }
    BraidingMatrix::new(q.conductor(), exp)
}

/// Canonical key for groupoid objects: diagonal and symmetrization, which
/// determine the object up to twist-equivalence.
fn canon_key(q: &BraidingMatrix) -> Vec<(u64, u64)> {
    let rank = q.rank();
    let mut key = Vec::with_capacity(rank * (rank + 1) / 2 + rank);
    for i in 0..rank {
        let d = q.entry(i, i);
        key.push((d.order(), d.exponent()));
    }
    for i in 0..rank {
        for j in (i + 1)..rank {
            let s = q.sym_entry(i, j);
            key.push((s.order(), s.exponent()));
        }
    }
    key
}

/// Enumerate positive roots at the base object, walking the whole groupoid.
///
/// `Finite(R)` means `R` is stable under every discovered reflection within
/// the caps. A Cartan entry that stays undefined up to its cap is treated as
/// a cap hit.
pub fn enumerate_roots(q: &BraidingMatrix, caps: RootCaps) -> RootsResult {
    let rank = q.rank();
    let identity: Vec<Vec<i64>> = (0..rank)
        .map(|j| {
            let mut e = vec![0i64; rank];
            e[j] = 1;
            e
        })
        .collect();

    // state.map[j] = image of alpha_j at the state's object in base coords
    let mut visited: HashMap<Vec<(u64, u64)>, HashSet<Vec<Vec<i64>>>> = HashMap::new();
    let mut queue: VecDeque<(BraidingMatrix, Vec<Vec<i64>>)> = VecDeque::new();
    let mut roots: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut states = 0usize;

    visited
        .entry(canon_key(q))
        .or_default()
        .insert(identity.clone());
    queue.push_back((q.clone(), identity));

    while let Some((obj, map)) = queue.pop_front() {
        states += 1;
        if states > caps.max_states {
            return RootsResult::NotFiniteWithinCap {
                reason: format!("state cap {} exceeded", caps.max_states),
            };
        }
        // collect pullbacks of simple roots
        for col in &map {
            let positive = col.iter().all(|&x| x >= 0);
            let negative = col.iter().all(|&x| x <= 0);
            debug_assert!(positive || negative, "mixed-sign root image {:?}", col);
            let root: Vec<i64> = if positive {
                col.clone()
            } else {
                col.iter().map(|&x| -x).collect()
            };
            let height: i64 = root.iter().sum();
            if height > caps.max_height as i64 {
                return RootsResult::NotFiniteWithinCap {
                    reason: format!("root height cap {} exceeded", caps.max_height),
                };
            }
            roots.insert(root);
        }
        if rank == 1 {
            continue;
        }
        for i in 0..rank {
            // Cartan row at the current object
            let mut cartan_row = vec![0i64; rank];
            cartan_row[i] = 2;
            let mut defined = true;
            for j in 0..rank {
                if j != i {
                    match obj.cartan_entry(i, j, caps.cartan_cap) {
                        Ok(c) => cartan_row[j] = c,
                        Err(BraidingError::NoFiniteEntry { .. }) => {
                            defined = false;
                            break;
                        }
                        Err(e) => panic!("unexpected braiding error: {e}"),
                    }
                }
            }
            if !defined {
                // The q-Serre condition never fires for some pair, so the
                // walk cannot certify finiteness.
                return RootsResult::NotFiniteWithinCap {
                    reason: format!("Cartan entry undefined up to cap {}", caps.cartan_cap),
                };
            }
            let reflected = match reflect(&obj, i, caps.cartan_cap) {
                Ok(m) => m,
                Err(_) => {
                    return RootsResult::NotFiniteWithinCap {
                        reason: format!("Cartan entry undefined up to cap {}", caps.cartan_cap),
                    }
                }
            };
            // alpha_j at the reflected object corresponds to s_i(alpha_j)
            // at the current one
            let new_map: Vec<Vec<i64>> = (0..rank)
                .map(|j| {
                    let mut e = vec![0i64; rank];
                    e[j] = 1;
                    let si = reflection_map(&cartan_row, i, &e);
                    let mut img = vec![0i64; rank];
                    for (k, &coef) in si.iter().enumerate() {
                        if coef != 0 {
                            for (t, &m) in map[k].iter().enumerate() {
                                img[t] += coef * m;
                            }
                        }
                    }
                    img
                })
                .collect();
            let key = canon_key(&reflected);
            let entry = visited.entry(key).or_default();
            if entry.insert(new_map.clone()) {
                queue.push_back((reflected, new_map));
            }
        }
    }

    let roots: Vec<MultiDegree> = roots
        .into_iter()
        .map(|v| MultiDegree(v.into_iter().map(|x| x as u32).collect()))
        .collect();
    RootsResult::Finite(roots)
}

/// Membership in the positive root set; undefined when enumeration hits a cap.
pub fn roots_contain(
    q: &BraidingMatrix,
    beta: &MultiDegree,
    caps: RootCaps,
) -> Result<bool, RootsysError> {
    match enumerate_roots(q, caps) {
        RootsResult::Finite(roots) => Ok(roots.contains(beta)),
        RootsResult::NotFiniteWithinCap { reason } => Err(RootsysError::NotFinite(reason)),
    }
}
