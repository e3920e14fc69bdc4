//! Truncated multigraded Hilbert data and symbolic product forms.

use std::collections::BTreeMap;

use crate::braiding::MultiDegree;

/// Exact multigraded dimension table, complete for all degrees of total
/// degree `<= truncation`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertData {
    pub table: BTreeMap<MultiDegree, u64>,
    pub truncation: u32,
}

impl HilbertData {
    pub fn dim(&self, d: &MultiDegree) -> u64 {
        self.table.get(d).copied().unwrap_or(0)
    }

    /// Coefficientwise product, truncated at the smaller truncation.
    pub fn product(&self, other: &HilbertData) -> HilbertData {
        let truncation = self.truncation.min(other.truncation);
        let mut table: BTreeMap<MultiDegree, u64> = BTreeMap::new();
        for (a, ca) in &self.table {
            if a.total() > truncation {
                continue;
            }
            for (b, cb) in &other.table {
                let d = a.add(b);
                if d.total() > truncation {
                    continue;
                }
                *table.entry(d).or_insert(0) += ca * cb;
            }
        }
        HilbertData { table, truncation }
    }

    /// `true` when every coefficient of `self` is `<=` the matching one.
    pub fn le(&self, other: &HilbertData) -> bool {
        self.table
            .iter()
            .all(|(d, c)| *c <= other.dim(d))
    }

    /// First degree where the tables differ, if any.
    pub fn first_difference(&self, other: &HilbertData) -> Option<MultiDegree> {
        let trunc = self.truncation.min(other.truncation);
        let mut degrees: Vec<&MultiDegree> =
            self.table.keys().chain(other.table.keys()).collect();
        degrees.sort();
        degrees.dedup();
        degrees
            .into_iter()
            .filter(|d| d.total() <= trunc)
            .find(|d| self.dim(d) != other.dim(d))
            .cloned()
    }
}

/// All multidegrees of the given rank with total degree `<= max_total`,
/// sorted ascending (so every prefix closes downward).
pub fn degrees_up_to(rank: usize, max_total: u32) -> Vec<MultiDegree> {
    let mut out = Vec::new();
    let mut current = MultiDegree::zero(rank);
    fn rec(rank: usize, pos: usize, left: u32, current: &mut MultiDegree, out: &mut Vec<MultiDegree>) {
        if pos == rank {
            out.push(current.clone());
            return;
        }
        for v in 0..=left {
            current.0[pos] = v;
            rec(rank, pos + 1, left - v, current, out);
        }
        current.0[pos] = 0;
    }
    rec(rank, 0, max_total, &mut current, &mut out);
    out.sort();
    out
}

/// A PBW-type Hilbert factorization: numerator factors `1 + t^b` (height-2
/// generators), denominator factors `1/(1 - t^b)` (infinite height), and
/// optional general heights `(1 - t^{N b})/(1 - t^b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductForm {
    pub numerator: Vec<MultiDegree>,
    pub denominator: Vec<MultiDegree>,
    pub general: Vec<(MultiDegree, u32)>,
}

impl ProductForm {
    pub fn new(numerator: Vec<MultiDegree>, denominator: Vec<MultiDegree>) -> Self {
        ProductForm {
            numerator,
            denominator,
            general: Vec::new(),
        }
    }
}

/// Exact truncated expansion of a product form.
pub fn expand_product_form(form: &ProductForm, rank: usize, max_total: u32) -> HilbertData {
    let degrees = degrees_up_to(rank, max_total);
    let mut coeffs: BTreeMap<MultiDegree, u64> = BTreeMap::new();
    coeffs.insert(MultiDegree::zero(rank), 1);
    for b in &form.numerator {
        // multiply by (1 + t^b): iterate descending so each degree reads the
        // not-yet-updated lower value
        let mut next = coeffs.clone();
        for d in &degrees {
            if let Some(lower) = d.checked_sub(b) {
                if let Some(&c) = coeffs.get(&lower) {
                    *next.entry(d.clone()).or_insert(0) += c;
                }
            }
        }
        coeffs = next;
    }
    for (b, height) in &form.general {
        // multiply by 1 + t^b + ... + t^{(height-1) b}
        let mut next = coeffs.clone();
        for d in &degrees {
            let mut acc = 0u64;
            let mut lower = d.clone();
            for _ in 1..*height {
                match lower.checked_sub(b) {
                    Some(l) => {
                        acc += coeffs.get(&l).copied().unwrap_or(0);
                        lower = l;
                    }
                    None => break,
                }
            }
            if acc > 0 {
                *next.entry(d.clone()).or_insert(0) += acc;
            }
        }
        coeffs = next;
    }
    for b in &form.denominator {
        // multiply by 1/(1 - t^b): ascending recurrence new[d] = old[d] + new[d - b]
        let mut next: BTreeMap<MultiDegree, u64> = BTreeMap::new();
        for d in &degrees {
            let mut c = coeffs.get(d).copied().unwrap_or(0);
            if let Some(lower) = d.checked_sub(b) {
                c += next.get(&lower).copied().unwrap_or(0);
            }
            if c > 0 {
                next.insert(d.clone(), c);
            }
        }
        coeffs = next;
    }
    coeffs.retain(|_, c| *c > 0);
    HilbertData {
        table: coeffs,
        truncation: max_total,
    }
}

/// GK-dimension of the algebra a product form describes: the number of
/// infinite-height PBW generators.
pub fn gk_of_product_form(form: &ProductForm) -> usize {
    form.denominator.len()
}

/// Heights for basis-spec generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Height {
    Two,
    Infinite,
}

/// An ordered PBW generator list with degrees and heights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisSpec {
    pub generators: Vec<(MultiDegree, Height)>,
}

impl BasisSpec {
    pub fn product_form(&self) -> ProductForm {
        let mut numerator = Vec::new();
        let mut denominator = Vec::new();
        for (d, h) in &self.generators {
            match h {
                Height::Two => numerator.push(d.clone()),
                Height::Infinite => denominator.push(d.clone()),
            }
        }
        ProductForm::new(numerator, denominator)
    }
}

/// Count exponent tuples per multidegree by direct enumeration. This is the
/// combinatorial oracle against `expand_product_form`.
pub fn count_basis_monomials(spec: &BasisSpec, rank: usize, max_total: u32) -> HilbertData {
    let mut table: BTreeMap<MultiDegree, u64> = BTreeMap::new();
    fn rec(
        gens: &[(MultiDegree, Height)],
        acc: MultiDegree,
        max_total: u32,
        table: &mut BTreeMap<MultiDegree, u64>,
    ) {
        match gens.split_first() {
            None => {
                *table.entry(acc).or_insert(0) += 1;
            }
            Some(((d, h), rest)) => {
                let mut current = acc;
                let limit: Option<u32> = match h {
                    Height::Two => Some(1),
                    Height::Infinite => None,
                };
                let mut n = 0u32;
                loop {
                    rec(rest, current.clone(), max_total, table);
                    n += 1;
                    if let Some(l) = limit {
                        if n > l {
                            break;
                        }
                    }
                    current = current.add(d);
                    if current.total() > max_total {
                        break;
                    }
                }
            }
        }
    }
    rec(
        &spec.generators,
        MultiDegree::zero(rank),
        max_total,
        &mut table,
    );
    HilbertData {
        table,
        truncation: max_total,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(v: &[u32]) -> MultiDegree {
        MultiDegree(v.to_vec())
    }

    #[test]
    fn empty_form_is_constant_one() {
        let f = ProductForm::new(vec![], vec![]);
        let h = expand_product_form(&f, 3, 4);
        assert_eq!(h.dim(&md(&[0, 0, 0])), 1);
        assert_eq!(h.table.len(), 1);
        assert_eq!(gk_of_product_form(&f), 0);
    }

    #[test]
    fn single_height_two_generator() {
        let f = ProductForm::new(vec![md(&[1, 0])], vec![]);
        let h = expand_product_form(&f, 2, 5);
        assert_eq!(h.dim(&md(&[0, 0])), 1);
        assert_eq!(h.dim(&md(&[1, 0])), 1);
        assert_eq!(h.dim(&md(&[2, 0])), 0);
    }

    #[test]
    fn z_form_of_the_first_case() {
        // 1 / ((1 - t1^2 t2^3 t3)(1 - t1 t2^3 t3^2))
        let f = ProductForm::new(vec![], vec![md(&[2, 3, 1]), md(&[1, 3, 2])]);
        assert_eq!(gk_of_product_form(&f), 2);
        let h = expand_product_form(&f, 3, 12);
        assert_eq!(h.dim(&md(&[0, 0, 0])), 1);
        assert_eq!(h.dim(&md(&[2, 3, 1])), 1);
        assert_eq!(h.dim(&md(&[1, 3, 2])), 1);
        assert_eq!(h.dim(&md(&[3, 6, 3])), 1); // u + v
        assert_eq!(h.dim(&md(&[4, 6, 2])), 1); // 2u
        assert_eq!(h.dim(&md(&[1, 1, 1])), 0);
    }

    #[test]
    fn general_height_factor() {
        // (1 - t^3)/(1 - t) = 1 + t + t^2 in one variable
        let f = ProductForm {
            numerator: vec![],
            denominator: vec![],
            general: vec![(md(&[1]), 3)],
        };
        let h = expand_product_form(&f, 1, 5);
        assert_eq!(h.dim(&md(&[0])), 1);
        assert_eq!(h.dim(&md(&[1])), 1);
        assert_eq!(h.dim(&md(&[2])), 1);
        assert_eq!(h.dim(&md(&[3])), 0);
    }

    #[test]
    fn basis_count_matches_expansion() {
        // a mixed spec: counts must equal the expanded product form
        let spec = BasisSpec {
            generators: vec![
                (md(&[0, 0, 1]), Height::Two),
                (md(&[0, 1, 1]), Height::Infinite),
                (md(&[1, 1, 0]), Height::Infinite),
                (md(&[1, 0, 0]), Height::Two),
            ],
        };
        let counted = count_basis_monomials(&spec, 3, 6);
        let expanded = expand_product_form(&spec.product_form(), 3, 6);
        assert_eq!(counted, expanded);
    }

    #[test]
    fn single_generator_series() {
        let spec = BasisSpec {
            generators: vec![(md(&[1, 1]), Height::Two)],
        };
        let h = count_basis_monomials(&spec, 2, 4);
        assert_eq!(h.dim(&md(&[0, 0])), 1);
        assert_eq!(h.dim(&md(&[1, 1])), 1);
        assert_eq!(h.dim(&md(&[2, 2])), 0);
    }

    #[test]
    fn product_and_le() {
        let f1 = ProductForm::new(vec![md(&[1, 0])], vec![]);
        let f2 = ProductForm::new(vec![], vec![md(&[0, 1])]);
        let h1 = expand_product_form(&f1, 2, 4);
        let h2 = expand_product_form(&f2, 2, 4);
        let p = h1.product(&h2);
        let combined = expand_product_form(
            &ProductForm::new(vec![md(&[1, 0])], vec![md(&[0, 1])]),
            2,
            4,
        );
        assert_eq!(p, combined);
        assert!(h2.le(&p));
        assert_eq!(h1.first_difference(&h1.clone()), None);
    }
}
