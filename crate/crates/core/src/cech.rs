//! The Mayer–Vietoris complex `E_1^{0,*}` of the chamber cover.
//!
//! Degree `q` has one basis element per `(q+1)`-subset `S` of chambers and
//! per connected component of `∩_{C∈S} V_C`. That intersection is `V` minus
//! the hyperplanes separating some pair in `S`, so its components are the
//! chambers of that subarrangement.

use std::collections::HashMap;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::SignVector;
use crate::chambers::enumerate_cells;
use crate::error::{Error, Result};
use crate::intrank::SparseIntMatrix;
use crate::poset::characteristic_and_poincare;
use crate::zmodel::ZModel;

pub const DEFAULT_CHAMBER_CAP: usize = 16;
/// Largest number of chambers accepted for the full (all subsets) complex.
pub const FULL_CHAMBER_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CechBasisElement {
    pub subset: Vec<usize>,
    /// Component of the intersection, as signs over `sep_union(subset)`.
    #[serde(serialize_with = "ser_signs")]
    pub component: SignVector,
}

fn ser_signs<S: serde::Serializer>(v: &SignVector, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CechComplex {
    pub degrees: Vec<Vec<CechBasisElement>>,
    /// `differentials[q]` maps `C^q → C^{q+1}`; rows index `C^{q+1}`.
    pub differentials: Vec<SparseIntMatrix>,
}

impl CechComplex {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(Vec::len).collect()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.differentials
            .par_iter()
            .map(SparseIntMatrix::rank)
            .collect()
    }

    /// Betti numbers `dim C^q − rank d^q − rank d^{q−1}` for every degree
    /// whose outgoing differential was built.
    pub fn betti(&self) -> Vec<usize> {
        let ranks = self.ranks();
        (0..self.differentials.len())
            .map(|q| {
                let prev = if q == 0 { 0 } else { ranks[q - 1] };
                self.degrees[q].len() - ranks[q] - prev
            })
            .collect()
    }

    /// Whether `d^{q+1} ∘ d^q = 0` for every consecutive pair.
    pub fn is_complex(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| w[1].mul_dense(&w[0]).iter().flatten().all(|&x| x == 0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub cech: Vec<usize>,
    pub os: Vec<usize>,
    #[serde(rename = "match")]
    pub matched: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CechOptions {
    pub chamber_cap: usize,
}

impl Default for CechOptions {
    fn default() -> Self {
        CechOptions {
            chamber_cap: DEFAULT_CHAMBER_CAP,
        }
    }
}

/// Hyperplanes separating some pair of chambers in `subset`.
pub fn sep_union(model: &ZModel, subset: &[usize]) -> Vec<usize> {
    let ch = model.chambers();
    let Some(&first) = subset.first() else {
        return Vec::new();
    };
    let n = model.arrangement().len();
    (0..n)
        .filter(|&j| {
            subset
                .iter()
                .any(|&c| ch[c].signs.0[j] != ch[first].signs.0[j])
        })
        .collect()
}

/// Connected components of `∩_{C∈subset} V_C`, as chambers of the
/// subarrangement on `sep_union(subset)`, sorted canonically.
pub fn components_of_intersection(model: &ZModel, subset: &[usize]) -> Vec<SignVector> {
    components_for_sep(model, &sep_union(model, subset))
}

fn components_for_sep(model: &ZModel, sep: &[usize]) -> Vec<SignVector> {
    let a = model.arrangement();
    enumerate_cells(&a.sub_forms(sep), a.dim(), None)
        .expect("uncapped enumeration")
        .into_iter()
        .map(|c| c.signs)
        .collect()
}

struct Degree {
    subsets: Vec<Vec<usize>>,
    seps: Vec<Vec<usize>>,
    /// Offset of each subset's first basis element.
    offsets: Vec<usize>,
    index: HashMap<Vec<usize>, usize>,
    basis: Vec<CechBasisElement>,
}

struct ComponentCache<'a> {
    model: &'a ZModel,
    cache: Mutex<HashMap<Vec<usize>, std::sync::Arc<Vec<SignVector>>>>,
}

impl ComponentCache<'_> {
    fn get(&self, sep: &[usize]) -> std::sync::Arc<Vec<SignVector>> {
        if let Some(v) = self.cache.lock().unwrap().get(sep) {
            return v.clone();
        }
        let comps = std::sync::Arc::new(components_for_sep(self.model, sep));
        self.cache
            .lock()
            .unwrap()
            .insert(sep.to_vec(), comps.clone());
        comps
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

fn build_degree(model: &ZModel, cache: &ComponentCache<'_>, q: usize) -> Degree {
    let subsets = combinations(model.chambers().len(), q + 1);
    let seps: Vec<Vec<usize>> = subsets.par_iter().map(|s| sep_union(model, s)).collect();
    let comps: Vec<_> = seps.par_iter().map(|s| cache.get(s)).collect();
    let mut offsets = Vec::with_capacity(subsets.len());
    let mut basis = Vec::new();
    let mut index = HashMap::with_capacity(subsets.len());
    for (i, (s, cs)) in subsets.iter().zip(&comps).enumerate() {
        offsets.push(basis.len());
        index.insert(s.clone(), i);
        basis.extend(cs.iter().map(|c| CechBasisElement {
            subset: s.clone(),
            component: c.clone(),
        }));
    }
    Degree {
        subsets,
        seps,
        offsets,
        index,
        basis,
    }
}

fn positions(sub: &[usize], sup: &[usize]) -> Vec<usize> {
    sub.iter()
        .map(|j| sup.binary_search(j).expect("sep sets are nested"))
        .collect()
}

/// Coboundary `C^q → C^{q+1}`: the entry between `(S∖{s_i}, c')` and `(S, c)`
/// is `(−1)^i` when `c` restricts to `c'`.
fn build_differential(lower: &Degree, upper: &Degree) -> Result<SparseIntMatrix> {
    let blocks: Vec<Result<Vec<(usize, usize, i64)>>> = upper
        .subsets
        .par_iter()
        .enumerate()
        .map(|(ti, t)| {
            let sep_t = &upper.seps[ti];
            let start = upper.offsets[ti];
            let end = upper
                .offsets
                .get(ti + 1)
                .copied()
                .unwrap_or(upper.basis.len());
            let mut entries = Vec::new();
            for i in 0..t.len() {
                let mut face = t.clone();
                face.remove(i);
                let fi = lower.index[&face];
                let sep_f = &lower.seps[fi];
                let pos = positions(sep_f, sep_t);
                let fstart = lower.offsets[fi];
                let fend = lower
                    .offsets
                    .get(fi + 1)
                    .copied()
                    .unwrap_or(lower.basis.len());
                let face_comps = &lower.basis[fstart..fend];
                let sign = if i % 2 == 0 { 1 } else { -1 };
                for (row, el) in upper.basis[start..end].iter().enumerate() {
                    let restricted = el.component.restrict(&pos);
                    let col = face_comps
                        .binary_search_by(|b| b.component.cmp(&restricted))
                        .map_err(|_| {
                            Error::InternalInconsistency(format!(
                                "restriction {restricted} of {} is not a component",
                                el.component
                            ))
                        })?;
                    entries.push((start + row, fstart + col, sign));
                }
            }
            Ok(entries)
        })
        .collect();
    let mut m = SparseIntMatrix::new(upper.basis.len(), lower.basis.len());
    for b in blocks {
        m.entries.extend(b?);
    }
    Ok(m)
}

fn check_cap(model: &ZModel, cap: usize) -> Result<()> {
    if model.chambers().len() > cap {
        return Err(Error::ChamberLimitExceeded(cap));
    }
    Ok(())
}

/// Builds degrees `0..=qmax` and the differentials between them.
pub fn build_cech_complex(model: &ZModel, qmax: usize, opts: CechOptions) -> Result<CechComplex> {
    check_cap(model, opts.chamber_cap)?;
    let nch = model.chambers().len();
    if qmax > nch.max(1) {
        return Err(Error::DegreeOutOfRange(qmax));
    }
    let cache = ComponentCache {
        model,
        cache: Mutex::new(HashMap::new()),
    };
    let degrees: Vec<Degree> = (0..=qmax).map(|q| build_degree(model, &cache, q)).collect();
    let differentials = degrees
        .windows(2)
        .map(|w| build_differential(&w[0], &w[1]))
        .collect::<Result<Vec<_>>>()?;
    Ok(CechComplex {
        degrees: degrees.into_iter().map(|d| d.basis).collect(),
        differentials,
    })
}

/// The full complex over every nonempty subset of chambers.
pub fn build_full_complex(model: &ZModel) -> Result<CechComplex> {
    check_cap(model, FULL_CHAMBER_LIMIT)?;
    build_cech_complex(
        model,
        model.chambers().len(),
        CechOptions {
            chamber_cap: FULL_CHAMBER_LIMIT,
        },
    )
}

/// Cohomology of the chamber cover in degrees `0..=d` against the Poincaré
/// coefficients of the complement.
pub fn betti_compare(model: &ZModel, qmax: usize, opts: CechOptions) -> Result<BettiTable> {
    let d = model.arrangement().dim();
    if qmax < d + 1 {
        return Err(Error::DegreeOutOfRange(qmax));
    }
    let complex = build_cech_complex(model, qmax, opts)?;
    let mut cech = complex.betti();
    cech.truncate(d + 1);
    cech.resize(d + 1, 0);
    let poly = characteristic_and_poincare(model.arrangement())?;
    let mut os: Vec<usize> = poly.poincare.coeffs().iter().map(|&c| c as usize).collect();
    os.resize(d + 1, 0);
    let matched = cech == os;
    Ok(BettiTable { cech, os, matched })
}

#[derive(Serialize)]
struct DumpDegree<'a> {
    degree: usize,
    basis: &'a [CechBasisElement],
}

#[derive(Serialize)]
struct DumpDifferential {
    from: usize,
    rows: usize,
    cols: usize,
    entries: Vec<[i64; 3]>,
}

/// JSON dump: bases per degree and differentials as `[row, col, ±1]` triplets.
pub fn dump_complex(c: &CechComplex) -> serde_json::Value {
    let degrees: Vec<DumpDegree> = c
        .degrees
        .iter()
        .enumerate()
        .map(|(degree, basis)| DumpDegree { degree, basis })
        .collect();
    let differentials: Vec<DumpDifferential> = c
        .differentials
        .iter()
        .enumerate()
        .map(|(q, m)| {
            let mut entries: Vec<[i64; 3]> = m
                .entries
                .iter()
                .map(|&(r, c, v)| [r as i64, c as i64, v])
                .collect();
            entries.sort_unstable();
            DumpDifferential {
                from: q,
                rows: m.nrows,
                cols: m.ncols,
                entries,
            }
        })
        .collect();
    serde_json::json!({ "degrees": degrees, "differentials": differentials })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;

    fn model(d: usize, rows: &[&[i64]]) -> ZModel {
        ZModel::new(Arrangement::from_int_rows(d, rows).unwrap())
    }

    #[test]
    fn sep_unions() {
        let axes = model(2, &[&[1, 0, 0], &[0, 1, 0]]);
        // chambers: ++, +-, -+, --
        assert!(sep_union(&axes, &[2]).is_empty());
        assert_eq!(sep_union(&axes, &[0, 1]), vec![1]);
        assert_eq!(sep_union(&axes, &[0, 1, 3]), vec![0, 1]);
    }

    #[test]
    fn component_counts() {
        let point = model(1, &[&[1, 0]]);
        assert_eq!(components_of_intersection(&point, &[0]).len(), 1);
        assert_eq!(components_of_intersection(&point, &[0, 1]).len(), 2);
        let axes = model(2, &[&[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(components_of_intersection(&axes, &[0, 3]).len(), 4);
    }

    #[test]
    fn point_complex() {
        let point = model(1, &[&[1, 0]]);
        let c = build_cech_complex(&point, 1, CechOptions::default()).unwrap();
        assert_eq!(c.dims(), vec![2, 2]);
        assert_eq!(c.ranks(), vec![1]);
        let t = betti_compare(&point, 2, CechOptions::default()).unwrap();
        assert_eq!(
            t,
            BettiTable {
                cech: vec![1, 1],
                os: vec![1, 1],
                matched: true
            }
        );
    }

    #[test]
    fn errors() {
        let point = model(1, &[&[1, 0]]);
        assert_eq!(
            betti_compare(&point, 1, CechOptions::default()),
            Err(Error::DegreeOutOfRange(1))
        );
        let lines = model(2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, -1]]);
        assert_eq!(
            build_cech_complex(&lines, 1, CechOptions { chamber_cap: 5 }),
            Err(Error::ChamberLimitExceeded(5))
        );
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert!(combinations(2, 3).is_empty());
    }
}
