//! Graded quotient engine: per-degree normal forms of `T(V)/<relations>` via
//! exact sparse row reduction, Hilbert series, zero tests and primitivity
//! tests.
//!
//! Relations are multihomogeneous, so the two-sided ideal decomposes per
//! multidegree and each component is spanned by
//! `I_d = sum_i x_i I_{d - a_i} + sum_j I_{d - a_j} x_j + R_d`.
//! Components are echelonized degree by degree under the fixed word order
//! (degree-lexicographic, `x_1 < ... < x_theta`, largest words eliminated
//! first); the echelon data is cached and reused by higher degrees.
//!
//! Degrees whose word count exceeds the resource bound are never
//! echelonized. Zero tests fall back to a lazy rewriting pass there: words
//! are rewritten by left/right multiples of lower-degree echelon rows, which
//! only ever subtracts ideal elements, so a zero residue is a sound
//! certificate while a nonzero residue is inconclusive and reported as a
//! resource error.

mod series;

pub use series::{
    count_basis_monomials, degrees_up_to, expand_product_form, gk_of_product_form, BasisSpec,
    Height, HilbertData, ProductForm,
};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::braiding::{BraidingMatrix, MultiDegree};
use crate::freealg::{
    coproduct_defect, word_count, words_of_degree, FreeAlgError, FreeElement, Word,
};
use crate::scalar::Cyclotomic;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error("resource guard: {0}")]
    ResourceGuard(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error(transparent)]
    FreeAlg(#[from] FreeAlgError),
}

/// A braiding matrix together with a list of homogeneous relations; defines
/// a graded quotient of the free algebra.
#[derive(Clone)]
pub struct Presentation {
    pub name: String,
    pub braiding: BraidingMatrix,
    pub relations: Vec<FreeElement>,
}

impl Presentation {
    pub fn new(
        name: impl Into<String>,
        braiding: BraidingMatrix,
        relations: Vec<FreeElement>,
    ) -> Result<Self, QuotientError> {
        let name = name.into();
        for (k, r) in relations.iter().enumerate() {
            if r.rank() != braiding.rank() {
                return Err(QuotientError::InvalidPresentation(format!(
                    "relation {} of '{}' has rank {} but the braiding has rank {}",
                    k,
                    name,
                    r.rank(),
                    braiding.rank()
                )));
            }
            if r.is_zero() {
                return Err(QuotientError::InvalidPresentation(format!(
                    "relation {} of '{}' is zero in the free algebra",
                    k, name
                )));
            }
            match r.degree() {
                None => {
                    return Err(QuotientError::InvalidPresentation(format!(
                        "relation {} of '{}' is not homogeneous",
                        k, name
                    )))
                }
                Some(d) if d.total() < 2 => {
                    return Err(QuotientError::InvalidPresentation(format!(
                        "relation {} of '{}' has total degree {} < 2",
                        k,
                        name,
                        d.total()
                    )))
                }
                _ => {}
            }
        }
        Ok(Presentation {
            name,
            braiding,
            relations,
        })
    }

    /// The same algebra without the listed relation indices.
    pub fn without_relations(&self, drop: &[usize]) -> Presentation {
        let relations = self
            .relations
            .iter()
            .enumerate()
            .filter(|(k, _)| !drop.contains(k))
            .map(|(_, r)| r.clone())
            .collect();
        Presentation {
            name: format!("{}-sub", self.name),
            braiding: self.braiding.clone(),
            relations,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EngineOptions {
    /// Degrees with more words than this are outside the echelon zone.
    pub word_bound: usize,
}

impl Default for EngineOptions {
    fn default() -> Self {
        // default 3^9: keeps rank-3 computations up to total degree 9 inside
        // the echelon zone
        EngineOptions { word_bound: 19683 }
    }
}

/// Per-degree standard words and reduction data.
#[derive(Debug, Clone)]
pub struct DegreeBasis {
    pub degree: MultiDegree,
    /// ascending in the word order
    pub standard_words: Vec<Word>,
    /// normal-form coordinates over `standard_words` for every degree-d word
    pub reduction: HashMap<Word, Vec<(Word, Cyclotomic)>>,
}

impl DegreeBasis {
    pub fn dimension(&self) -> usize {
        self.standard_words.len()
    }
}

/// normal form tail, sorted descending in the word order
type Nf = Vec<(Word, Cyclotomic)>;

/// sparse row over column indices, ascending
type Row = Vec<(u32, Cyclotomic)>;

struct FullDegree {
    /// all degree-d words, descending; column i = words_desc[i]
    words_desc: Vec<Word>,
    /// pivot word -> normal form over standard words; standard words absent
    reductions: HashMap<Word, Arc<Nf>>,
    /// pivot words in ascending column order (descending word order)
    pivot_words: Vec<Word>,
    dim: usize,
}

#[derive(Default)]
struct EngineState {
    full: HashMap<MultiDegree, Arc<FullDegree>>,
    /// lazy route-rewriting memo; `None` entries are irreducible words
    lazy: HashMap<Word, Option<Arc<Nf>>>,
    /// relation rows per degree, lead-normalized, for the lazy pass
    minis: HashMap<MultiDegree, Arc<Vec<Nf>>>,
}

/// The quotient engine for one presentation. All queries are internally
/// serialized through the cache lock, so concurrent use is safe.
pub struct Quotient {
    pres: Presentation,
    options: EngineOptions,
    rel_by_degree: HashMap<MultiDegree, Vec<usize>>,
    state: Mutex<EngineState>,
}

fn row_sub_mul(a: &Row, coeff: &Cyclotomic, b: &Row) -> Row {
    // a - coeff * b, both sorted ascending by column
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ca, va)), Some((cb, vb))) => {
                if ca < cb {
                    out.push((*ca, va.clone()));
                    i += 1;
                } else if cb < ca {
                    let v = vb.mul(coeff).neg();
                    if !v.is_zero() {
                        out.push((*cb, v));
                    }
                    j += 1;
                } else {
                    let v = va.sub(&vb.mul(coeff));
                    if !v.is_zero() {
                        out.push((*ca, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            (Some((ca, va)), None) => {
                out.push((*ca, va.clone()));
                i += 1;
            }
            (None, Some((cb, vb))) => {
                let v = vb.mul(coeff).neg();
                if !v.is_zero() {
                    out.push((*cb, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Incremental reduced row echelon form over a fixed column order.
struct Rref {
    pivots: BTreeMap<u32, Row>,
    /// column -> pivot columns of rows with a nonzero entry there
    col_uses: HashMap<u32, BTreeSet<u32>>,
}

impl Rref {
    fn new() -> Self {
        Rref {
            pivots: BTreeMap::new(),
            col_uses: HashMap::new(),
        }
    }

    fn reduce(&self, mut row: Row) -> Row {
        let mut i = 0;
        while i < row.len() {
            let col = row[i].0;
            if let Some(p) = self.pivots.get(&col) {
                let coeff = row[i].1.clone();
                row = row_sub_mul(&row, &coeff, p);
            } else {
                i += 1;
            }
        }
        row
    }

    fn index_row(&mut self, lead: u32, row: &Row) {
        for (c, _) in row.iter().skip(1) {
            self.col_uses.entry(*c).or_default().insert(lead);
        }
    }

    fn unindex_row(&mut self, lead: u32, row: &Row) {
        for (c, _) in row.iter().skip(1) {
            if let Some(set) = self.col_uses.get_mut(c) {
                set.remove(&lead);
            }
        }
    }

    fn insert(&mut self, row: Row) {
        let row = self.reduce(row);
        if row.is_empty() {
            return;
        }
        let lead = row[0].0;
        let inv = row[0].1.inv().expect("nonzero lead");
        let row: Row = row.iter().map(|(c, v)| (*c, v.mul(&inv))).collect();
        // eliminate the new pivot column from existing rows
        if let Some(users) = self.col_uses.get(&lead).cloned() {
            for user in users {
                let old = self.pivots.remove(&user).expect("indexed row exists");
                self.unindex_row(user, &old);
                let coeff = old
                    .iter()
                    .find(|(c, _)| *c == lead)
                    .map(|(_, v)| v.clone())
                    .expect("entry at pivot column");
                let new = row_sub_mul(&old, &coeff, &row);
                self.index_row(user, &new);
                self.pivots.insert(user, new);
            }
            self.col_uses.remove(&lead);
        }
        self.index_row(lead, &row);
        self.pivots.insert(lead, row);
    }
}

impl Quotient {
    pub fn new(pres: Presentation) -> Self {
        Quotient::with_options(pres, EngineOptions::default())
    }

    pub fn with_options(pres: Presentation, options: EngineOptions) -> Self {
        let mut rel_by_degree: HashMap<MultiDegree, Vec<usize>> = HashMap::new();
        for (k, r) in pres.relations.iter().enumerate() {
            let d = r.degree().expect("validated on construction");
            rel_by_degree.entry(d).or_default().push(k);
        }
        Quotient {
            pres,
            options,
            rel_by_degree,
            state: Mutex::new(EngineState::default()),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn braiding(&self) -> &BraidingMatrix {
        &self.pres.braiding
    }

    fn rank(&self) -> usize {
        self.pres.braiding.rank()
    }

    fn in_echelon_zone(&self, d: &MultiDegree) -> bool {
        word_count(d) <= self.options.word_bound
    }

    /// Echelon data for a degree, computing all sub-degrees first.
    fn full_degree(&self, d: &MultiDegree) -> Result<Arc<FullDegree>, QuotientError> {
        if !self.in_echelon_zone(d) {
            return Err(QuotientError::ResourceGuard(format!(
                "degree {} has {} words, over the bound {}",
                d,
                word_count(d),
                self.options.word_bound
            )));
        }
        if let Some(fd) = self.state.lock().unwrap().full.get(d) {
            return Ok(fd.clone());
        }
        let mut subs = d.sub_degrees();
        subs.sort_by_key(|s| (s.total(), s.clone()));
        for s in subs {
            if self.state.lock().unwrap().full.contains_key(&s) {
                continue;
            }
            let fd = Arc::new(self.compute_full(&s)?);
            self.state.lock().unwrap().full.insert(s, fd);
        }
        Ok(self.state.lock().unwrap().full.get(d).expect("just computed").clone())
    }

    /// Build one degree from already-cached proper sub-degrees.
    fn compute_full(&self, d: &MultiDegree) -> Result<FullDegree, QuotientError> {
        let rank = self.rank();
        let words_desc = words_of_degree(d);
        let col_of: HashMap<Word, u32> = words_desc
            .iter()
            .enumerate()
            .map(|(i, w)| (*w, i as u32))
            .collect();
        let mut rref = Rref::new();
        let to_row = |elem: &[(Word, Cyclotomic)]| -> Row {
            let mut row: Row = elem
                .iter()
                .map(|(w, c)| (*(col_of.get(w).expect("word of this degree")), c.clone()))
                .collect();
            row.sort_by_key(|(c, _)| *c);
            row
        };
        for i in 0..rank {
            let gen = Word::generator((i + 1) as u8);
            let alpha = MultiDegree::simple(rank, i);
            let sub_deg = match d.checked_sub(&alpha) {
                Some(s) => s,
                None => continue,
            };
            let sub = self
                .state
                .lock()
                .unwrap()
                .full
                .get(&sub_deg)
                .expect("sub-degree cached")
                .clone();
            for w in &sub.pivot_words {
                let tail = sub.reductions.get(w).expect("pivot has a tail").clone();
                // left multiple: x_i (w - nf(w))
                let mut elem: Vec<(Word, Cyclotomic)> = vec![(gen.concat(w), Cyclotomic::one())];
                for (t, c) in tail.iter() {
                    elem.push((gen.concat(t), c.neg()));
                }
                rref.insert(to_row(&elem));
                // right multiple: (w - nf(w)) x_i
                let mut elem: Vec<(Word, Cyclotomic)> = vec![(w.concat(&gen), Cyclotomic::one())];
                for (t, c) in tail.iter() {
                    elem.push((t.concat(&gen), c.neg()));
                }
                rref.insert(to_row(&elem));
            }
        }
        if let Some(rels) = self.rel_by_degree.get(d) {
            for &k in rels {
                let elem: Vec<(Word, Cyclotomic)> = self.pres.relations[k]
                    .terms()
                    .map(|(w, c)| (*w, c.clone()))
                    .collect();
                rref.insert(to_row(&elem));
            }
        }
        let mut reductions = HashMap::new();
        let mut pivot_words = Vec::new();
        for (lead, row) in &rref.pivots {
            let w = words_desc[*lead as usize];
            let tail: Nf = row
                .iter()
                .skip(1)
                .map(|(c, v)| (words_desc[*c as usize], v.neg()))
                .collect();
            reductions.insert(w, Arc::new(tail));
            pivot_words.push(w);
        }
        let dim = words_desc.len() - pivot_words.len();
        let _ = col_of;
        Ok(FullDegree {
            words_desc,
            reductions,
            pivot_words,
            dim,
        })
    }

    /// Dimension of the quotient in one multidegree.
    pub fn dim(&self, d: &MultiDegree) -> Result<u64, QuotientError> {
        Ok(self.full_degree(d)?.dim as u64)
    }

    /// Standard words plus the reduction map in one multidegree.
    pub fn degree_basis(&self, d: &MultiDegree) -> Result<DegreeBasis, QuotientError> {
        let fd = self.full_degree(d)?;
        let mut standard_words: Vec<Word> = fd
            .words_desc
            .iter()
            .filter(|w| !fd.reductions.contains_key(w))
            .copied()
            .collect();
        standard_words.reverse();
        let mut reduction = HashMap::new();
        for w in &fd.words_desc {
            match fd.reductions.get(w) {
                Some(tail) => {
                    let mut v: Vec<(Word, Cyclotomic)> = tail.as_ref().clone();
                    v.reverse();
                    reduction.insert(*w, v);
                }
                None => {
                    reduction.insert(*w, vec![(*w, Cyclotomic::one())]);
                }
            }
        }
        Ok(DegreeBasis {
            degree: d.clone(),
            standard_words,
            reduction,
        })
    }

    /// Exact dimensions for every multidegree of total degree `<= max_total`.
    pub fn hilbert(&self, max_total: u32) -> Result<HilbertData, QuotientError> {
        let mut table = BTreeMap::new();
        for d in degrees_up_to(self.rank(), max_total) {
            let dim = self.dim(&d)?;
            if dim > 0 {
                table.insert(d, dim);
            }
        }
        Ok(HilbertData {
            table,
            truncation: max_total,
        })
    }

    /// Precompute echelon data for all degrees up to a total degree.
    pub fn prepare(&self, max_total: u32) -> Result<(), QuotientError> {
        for d in degrees_up_to(self.rank(), max_total) {
            self.full_degree(&d)?;
        }
        Ok(())
    }

    /// Exact normal form onto standard words; requires every homogeneous
    /// component inside the echelon zone.
    pub fn normal_form(&self, u: &FreeElement) -> Result<FreeElement, QuotientError> {
        let mut out = FreeElement::zero(u.rank());
        for (d, comp) in u.homogeneous_components() {
            let fd = self.full_degree(&d)?;
            for (w, c) in comp.terms() {
                match fd.reductions.get(w) {
                    Some(tail) => {
                        for (t, ct) in tail.iter() {
                            out.add_term(*t, &c.mul(ct));
                        }
                    }
                    None => out.add_term(*w, c),
                }
            }
        }
        Ok(out)
    }

    /// Exact zero test. Inside the echelon zone this is authoritative; above
    /// it, a zero residue of the lazy pass is a sound certificate and a
    /// nonzero residue is reported as a resource error.
    pub fn is_zero(&self, u: &FreeElement) -> Result<bool, QuotientError> {
        for (d, comp) in u.homogeneous_components() {
            let residue = self.lazy_reduce_component(&comp)?;
            if residue.is_empty() {
                continue;
            }
            if self.in_echelon_zone(&d) {
                let nf = self.normal_form(&comp)?;
                if !nf.is_zero() {
                    return Ok(false);
                }
            } else {
                return Err(QuotientError::ResourceGuard(format!(
                    "degree {} is over the word bound and the lazy reduction left {} terms; \
                     raise the bound to decide exactly",
                    d,
                    residue.len()
                )));
            }
        }
        Ok(true)
    }

    /// Primitivity in the quotient: whether
    /// `(pi (x) pi)(Delta(u)) - 1 (x) pi(u) - pi(u) (x) 1 = 0`.
    pub fn is_primitive(&self, u: &FreeElement) -> Result<bool, QuotientError> {
        let defect = coproduct_defect(&self.pres.braiding, u)?;
        // lazy pass first
        let mut acc: HashMap<(Word, Word), Cyclotomic> = HashMap::new();
        let tensor_add = |acc: &mut HashMap<(Word, Word), Cyclotomic>,
                              l: Word,
                              r: Word,
                              c: Cyclotomic| {
            if c.is_zero() {
                return;
            }
            match acc.entry((l, r)) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    let s = e.get().add(&c);
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        };
        for ((l, r), c) in defect.terms() {
            let lnf = self.lazy_word_nf(*l)?;
            let rnf = self.lazy_word_nf(*r)?;
            match (&lnf, &rnf) {
                (None, None) => tensor_add(&mut acc, *l, *r, c.clone()),
                (Some(ln), None) => {
                    for (lt, lc) in ln.iter() {
                        tensor_add(&mut acc, *lt, *r, c.mul(lc));
                    }
                }
                (None, Some(rn)) => {
                    for (rt, rc) in rn.iter() {
                        tensor_add(&mut acc, *l, *rt, c.mul(rc));
                    }
                }
                (Some(ln), Some(rn)) => {
                    for (lt, lc) in ln.iter() {
                        for (rt, rc) in rn.iter() {
                            tensor_add(&mut acc, *lt, *rt, c.mul(lc).mul(rc));
                        }
                    }
                }
            }
        }
        if acc.is_empty() {
            return Ok(true);
        }
        // authoritative pass through the echelon zone
        let mut exact: HashMap<(Word, Word), Cyclotomic> = HashMap::new();
        for ((l, r), c) in defect.terms() {
            let ld = l.degree(self.rank());
            let rd = r.degree(self.rank());
            let lfd = self.full_degree(&ld)?;
            let rfd = self.full_degree(&rd)?;
            let lnf: Nf = match lfd.reductions.get(l) {
                Some(t) => t.as_ref().clone(),
                None => vec![(*l, Cyclotomic::one())],
            };
            let rnf: Nf = match rfd.reductions.get(r) {
                Some(t) => t.as_ref().clone(),
                None => vec![(*r, Cyclotomic::one())],
            };
            for (lt, lc) in &lnf {
                for (rt, rc) in &rnf {
                    tensor_add(&mut exact, *lt, *rt, c.mul(lc).mul(rc));
                }
            }
        }
        Ok(exact.is_empty())
    }

    // ---- lazy rewriting ----------------------------------------------------

    /// Relation rows at one degree, triangularized for the lazy pass.
    fn lazy_minis(&self, d: &MultiDegree) -> Result<Arc<Vec<Nf>>, QuotientError> {
        if let Some(m) = self.state.lock().unwrap().minis.get(d) {
            return Ok(m.clone());
        }
        let mut rows: Vec<Nf> = Vec::new();
        if let Some(rels) = self.rel_by_degree.get(d) {
            for &k in rels {
                let mut elem: HashMap<Word, Cyclotomic> = self.pres.relations[k]
                    .terms()
                    .map(|(w, c)| (*w, c.clone()))
                    .collect();
                // reduce against existing rows and route rewrites until stable
                loop {
                    let mut words: Vec<Word> = elem.keys().copied().collect();
                    words.sort_by(|a, b| b.deglex_cmp(a));
                    let mut changed = false;
                    for w in words {
                        let c = match elem.get(&w) {
                            Some(c) => c.clone(),
                            None => continue,
                        };
                        let expansion = if let Some(row) =
                            rows.iter().find(|r| r[0].0 == w)
                        {
                            Some(
                                row.iter()
                                    .skip(1)
                                    .map(|(t, v)| (*t, v.neg()))
                                    .collect::<Vec<_>>(),
                            )
                        } else {
                            self.split_expansion(w)?
                        };
                        if let Some(exp) = expansion {
                            elem.remove(&w);
                            for (t, v) in exp {
                                let add = c.mul(&v);
                                match elem.entry(t) {
                                    std::collections::hash_map::Entry::Occupied(mut e) => {
                                        let s = e.get().add(&add);
                                        if s.is_zero() {
                                            e.remove();
                                        } else {
                                            *e.get_mut() = s;
                                        }
                                    }
                                    std::collections::hash_map::Entry::Vacant(e) => {
                                        if !add.is_zero() {
                                            e.insert(add);
                                        }
                                    }
                                }
                            }
                            changed = true;
                            break;
                        }
                    }
                    if !changed {
                        break;
                    }
                }
                if !elem.is_empty() {
                    let mut nf: Nf = elem.into_iter().collect();
                    nf.sort_by(|a, b| b.0.deglex_cmp(&a.0));
                    let inv = nf[0].1.inv().expect("nonzero lead");
                    let nf: Nf = nf.into_iter().map(|(w, c)| (w, c.mul(&inv))).collect();
                    rows.push(nf);
                }
            }
        }
        let rows = Arc::new(rows);
        self.state
            .lock()
            .unwrap()
            .minis
            .insert(d.clone(), rows.clone());
        Ok(rows)
    }

    /// One split-rewriting step for a word: a left/right split through a
    /// reducible sub-word. Sub-words live at strictly smaller degrees, so
    /// this never re-enters the caller's degree. `None` means irreducible by
    /// splits.
    fn split_expansion(&self, w: Word) -> Result<Option<Nf>, QuotientError> {
        if let Some((head, w1)) = w.split_first() {
            if !w1.is_empty() {
                if let Some(nf1) = self.lazy_word_nf(w1)? {
                    let gen = Word::generator(head);
                    return Ok(Some(
                        nf1.iter().map(|(t, c)| (gen.concat(t), c.clone())).collect(),
                    ));
                }
                let (w2, tail) = w.split_last().expect("nonempty");
                if let Some(nf2) = self.lazy_word_nf(w2)? {
                    let gen = Word::generator(tail);
                    return Ok(Some(
                        nf2.iter().map(|(t, c)| (t.concat(&gen), c.clone())).collect(),
                    ));
                }
            }
        }
        Ok(None)
    }

    /// One rewriting step: a relation row whose lead is `w`, or a split.
    fn rewrite_expansion(&self, w: Word, minis: &[Nf]) -> Result<Option<Nf>, QuotientError> {
        if let Some(row) = minis.iter().find(|r| r[0].0 == w) {
            return Ok(Some(
                row.iter().skip(1).map(|(t, v)| (*t, v.neg())).collect(),
            ));
        }
        self.split_expansion(w)
    }

    /// Fully lazy-reduced normal form of a word; `None` when the word is
    /// irreducible for the lazy pass. Iterative so that long descending
    /// rewrite chains cannot overflow the stack.
    fn lazy_word_nf(&self, w: Word) -> Result<Option<Arc<Nf>>, QuotientError> {
        if let Some(hit) = self.state.lock().unwrap().lazy.get(&w) {
            return Ok(hit.clone());
        }
        // every word reachable by rewriting stays in the degree of `w`
        let minis = self.lazy_minis(&w.degree(self.rank()))?;
        struct Frame {
            word: Word,
            expansion: Option<Nf>,
        }
        let mut stack = vec![Frame {
            word: w,
            expansion: None,
        }];
        while let Some(top) = stack.last_mut() {
            let word = top.word;
            if top.expansion.is_none() {
                if self.state.lock().unwrap().lazy.contains_key(&word) {
                    stack.pop();
                    continue;
                }
                match self.rewrite_expansion(word, &minis)? {
                    None => {
                        self.state.lock().unwrap().lazy.insert(word, None);
                        stack.pop();
                    }
                    Some(exp) => {
                        let top = stack.last_mut().unwrap();
                        top.expansion = Some(exp);
                    }
                }
                continue;
            }
            let exp = top.expansion.as_ref().unwrap();
            // find an unresolved dependency
            let missing = {
                let guard = self.state.lock().unwrap();
                exp.iter()
                    .map(|(t, _)| *t)
                    .find(|t| !guard.lazy.contains_key(t))
            };
            if let Some(m) = missing {
                // dependencies are strictly smaller words of the same degree
                stack.push(Frame {
                    word: m,
                    expansion: None,
                });
                continue;
            }
            // combine
            let mut acc: HashMap<Word, Cyclotomic> = HashMap::new();
            {
                let guard = self.state.lock().unwrap();
                for (t, c) in exp.iter() {
                    match guard.lazy.get(t).expect("resolved") {
                        None => {
                            let e = acc.entry(*t).or_insert_with(|| Cyclotomic::zero(1));
                            *e = e.add(c);
                        }
                        Some(nf) => {
                            for (s, cs) in nf.iter() {
                                let e = acc.entry(*s).or_insert_with(|| Cyclotomic::zero(1));
                                *e = e.add(&c.mul(cs));
                            }
                        }
                    }
                }
            }
            acc.retain(|_, c| !c.is_zero());
            let mut nf: Nf = acc.into_iter().collect();
            nf.sort_by(|a, b| b.0.deglex_cmp(&a.0));
            self.state
                .lock()
                .unwrap()
                .lazy
                .insert(word, Some(Arc::new(nf)));
            stack.pop();
        }
        Ok(self
            .state
            .lock()
            .unwrap()
            .lazy
            .get(&w)
            .expect("just computed")
            .clone())
    }

    /// Lazy reduction of a homogeneous element: first eliminate leading words
    /// against the relation rows of the degree, then rewrite remaining
    /// words by splits, repeating until stable. A zero residue certifies
    /// membership in the ideal;
    fn lazy_reduce_component(
        &self,
        comp: &FreeElement,
    ) -> Result<HashMap<Word, Cyclotomic>, QuotientError> {
        let degree = match comp.degree() {
            Some(d) => d,
            None => return Ok(HashMap::new()), // zero element
        };
        let mut acc: HashMap<Word, Cyclotomic> =
            comp.terms().map(|(w, c)| (*w, c.clone())).collect();
        loop {
            // phase 1: subtract rows whose lead is the current leading word
            let minis = self.lazy_minis(&degree)?;
            loop {
                acc.retain(|_, c| !c.is_zero());
                let lead = acc
                    .keys()
                    .copied()
                    .max_by(|a, b| a.deglex_cmp(b));
                let lead = match lead {
                    Some(w) => w,
                    None => return Ok(acc),
                };
                match minis.iter().find(|r| r[0].0 == lead) {
                    Some(row) => {
                        let coeff = acc.get(&lead).expect("lead present").clone();
                        for (t, v) in row.iter() {
                            let e = acc.entry(*t).or_insert_with(|| Cyclotomic::zero(1));
                            *e = e.sub(&coeff.mul(v));
                        }
                    }
                    None => break,
                }
            }
            // phase 2: rewrite every word by its memoized split normal form
            let mut next: HashMap<Word, Cyclotomic> = HashMap::new();
            let mut changed = false;
            for (w, c) in &acc {
                match self.lazy_word_nf(*w)? {
                    None => {
                        let e = next.entry(*w).or_insert_with(|| Cyclotomic::zero(1));
                        *e = e.add(c);
                    }
                    Some(nf) => {
                        changed = true;
                        for (t, ct) in nf.iter() {
                            let e = next.entry(*t).or_insert_with(|| Cyclotomic::zero(1));
                            *e = e.add(&c.mul(ct));
                        }
                    }
                }
            }
            next.retain(|_, c| !c.is_zero());
            if !changed {
                return Ok(next);
            }
            acc = next;
        }
    }

}
