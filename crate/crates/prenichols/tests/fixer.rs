// temporary catalog-fixing harness
use prenichols::braiding::{BraidingMatrix, MultiDegree};
use prenichols::catalog;
use prenichols::freealg::{coproduct_defect, parse_expression, FreeElement, Word};
use prenichols::quotient::{EngineOptions, Presentation, Quotient};
use prenichols::scalar::Cyclotomic;
use prenichols::verifier::standard_lower_relations;
use std::collections::HashMap;

#[test]
fn debug_rep() {
    let entry = catalog::load_entry("g23-a").unwrap();
    let rep = entry.representation.as_ref().unwrap();
    let xu = &entry.elements["xu"];
    let m = rep.evaluate(xu).unwrap();
    eprintln!("rho(xu) rows:");
    for row in &m {
        let cells: Vec<String> = row.iter().map(|c| format!("{}", c)).collect();
        eprintln!("  [{}]", cells.join(", "));
    }
    // sanity: generators map correctly?
    let x1 = parse_expression("x1", &entry.braiding).unwrap();
    let m1 = rep.evaluate(&x1).unwrap();
    eprintln!("rho(x1):");
    for row in &m1 {
        let cells: Vec<String> = row.iter().map(|c| format!("{}", c)).collect();
        eprintln!("  [{}]", cells.join(", "));
    }
}

/// exact primitivity defect of `u` in `T(V)/<lower>`, as a reduced tensor
fn defect_reduced(
    q: &BraidingMatrix,
    lower: &[FreeElement],
    u: &FreeElement,
) -> HashMap<(Word, Word), Cyclotomic> {
    let pres = Presentation::new("solve", q.clone(), lower.to_vec()).unwrap();
    let quo = Quotient::with_options(pres, EngineOptions { word_bound: 60000 });
    let d = coproduct_defect(q, u).unwrap();
    let mut acc: HashMap<(Word, Word), Cyclotomic> = HashMap::new();
    for ((l, r), c) in d.terms() {
        let le = FreeElement::from_word(q.rank(), *l, Cyclotomic::one());
        let re = FreeElement::from_word(q.rank(), *r, Cyclotomic::one());
        let ln = quo.normal_form(&le).unwrap();
        let rn = quo.normal_form(&re).unwrap();
        for (lt, lc) in ln.terms() {
            for (rt, rc) in rn.terms() {
                let add = c.mul(lc).mul(rc);
                let e = acc.entry((*lt, *rt)).or_insert_with(|| Cyclotomic::zero(1));
                *e = e.add(&add);
            }
        }
    }
    acc.retain(|_, c| !c.is_zero());
    acc
}

/// solve defect(A) = C * defect(B); None if inconsistent
fn solve_ratio(
    a: &HashMap<(Word, Word), Cyclotomic>,
    b: &HashMap<(Word, Word), Cyclotomic>,
) -> Option<Cyclotomic> {
    if b.is_empty() {
        return None;
    }
    let (key, bval) = b.iter().next().unwrap();
    let aval = a.get(key)?;
    let c = aval.mul(&bval.inv().ok()?);
    // verify
    let mut ok = true;
    for (k, bv) in b {
        let av = a.get(k).cloned().unwrap_or_else(|| Cyclotomic::zero(1));
        if av != c.mul(bv) {
            ok = false;
            break;
        }
    }
    for (k, _) in a {
        if !b.contains_key(k) {
            ok = false;
            break;
        }
    }
    if ok { Some(c) } else { None }
}

fn render(c: &Cyclotomic) -> String {
    prenichols::scalar::render_cyclotomic(c)
}

#[test]
fn solve_instance_scalars() {
    // families: rel = A - C*B where primitivity requires exact C
    struct Case {
        id: &'static str,
        conductor: u64,
        q: Vec<Vec<i64>>,
        a: &'static str,
        b: &'static str,
        extra_lower: Vec<&'static str>,
    }
    let cases = vec![
        Case { id: "3.9", conductor: 12, q: vec![vec![4,5],vec![0,4]],
               a: "[x1,[x12,x2]]", b: "x12*x12", extra_lower: vec![] },
        Case { id: "3.11-brj23", conductor: 18, q: vec![vec![13,2],vec![0,9]],
               a: "[x1,[x112,x12]]", b: "x112*x112", extra_lower: vec![] },
        Case { id: "3.11-ufo9", conductor: 24, q: vec![vec![1,19],vec![0,12]],
               a: "[x1,[x112,x12]]", b: "x112*x112", extra_lower: vec![] },
        Case { id: "3.11-brj25", conductor: 10, q: vec![vec![1,6],vec![0,5]],
               a: "[x1,[x112,x12]]", b: "x112*x112", extra_lower: vec![] },
        Case { id: "3.11-stdg2", conductor: 8, q: vec![vec![2,3],vec![0,4]],
               a: "[x1,[x112,x12]]", b: "x112*x112", extra_lower: vec![] },
        Case { id: "3.11-ufo10-plus", conductor: 20, q: vec![vec![8,3],vec![0,10]],
               a: "[x1,[x112,x12]]", b: "x112*x112", extra_lower: vec![] },
        Case { id: "3.11-ufo10-minus", conductor: 20, q: vec![vec![8,13],vec![0,10]],
               a: "[x1,[x112,x12]]", b: "x112*x112", extra_lower: vec![] },
        Case { id: "3.11-ufo11-a", conductor: 30, q: vec![vec![6,23],vec![0,7]],
               a: "[x1,[x112,x12]]", b: "x112*x112", extra_lower: vec![] },
        Case { id: "3.11-ufo11-b", conductor: 30, q: vec![vec![6,19],vec![0,15]],
               a: "[x1,[x112,x12]]", b: "x112*x112", extra_lower: vec![] },
        Case { id: "3.11-ufo12", conductor: 14, q: vec![vec![3,13],vec![0,7]],
               a: "[x1,[x112,x12]]", b: "x112*x112", extra_lower: vec![] },
        Case { id: "3.14-ufo9", conductor: 24, q: vec![vec![8,5],vec![0,12]],
               a: "[x112,[[x112,x12],x12]]", b: "[x112,x12]*[x112,x12]", extra_lower: vec![] },
        Case { id: "3.14-ufo12", conductor: 14, q: vec![vec![9,1],vec![0,7]],
               a: "[x112,[[x112,x12],x12]]", b: "[x112,x12]*[x112,x12]", extra_lower: vec![] },
        Case { id: "3.13-ufo7", conductor: 12, q: vec![vec![4,11],vec![0,1]],
               a: "[[x112,x12],x12]", b: "x112*x112*x2", extra_lower: vec![] },
    ];
    for case in cases {
        let q = BraidingMatrix::new(case.conductor, case.q.clone()).unwrap();
        let a = parse_expression(case.a, &q).unwrap();
        let b = parse_expression(case.b, &q).unwrap();
        let deg = a.degree().unwrap();
        assert_eq!(b.degree().unwrap(), deg, "{}: degree mismatch", case.id);
        let mut lower = standard_lower_relations(&q, &deg, 8).unwrap();
        for e in &case.extra_lower {
            lower.push(parse_expression(e, &q).unwrap());
        }
        let da = defect_reduced(&q, &lower, &a);
        let db = defect_reduced(&q, &lower, &b);
        if da.is_empty() {
            eprintln!("{}: A alone is primitive ({} lower rels)", case.id, lower.len());
            continue;
        }
        match solve_ratio(&da, &db) {
            Some(c) => eprintln!("{}: A - C*B primitive with C = {}", case.id, render(&c)),
            None => eprintln!(
                "{}: NO scalar works (defect sizes {} vs {})",
                case.id,
                da.len(),
                db.len()
            ),
        }
    }
}

fn grammar_scalar(c: &Cyclotomic) -> String {
    // render as a sum of rational multiples of z(n,k)
    if let Some(r) = c.as_rational() {
        return format!("{}", r);
    }
    let n = c.conductor();
    let mut parts = Vec::new();
    for (k, coeff) in c.coeffs().iter().enumerate() {
        if coeff.is_integer() && format!("{}", coeff) == "0" {
            continue;
        }
        if k == 0 {
            parts.push(format!("{}", coeff));
        } else {
            parts.push(format!("{}*z({},{})", coeff, n, k));
        }
    }
    parts.join(" + ").replace("+ -", "- ")
}

#[test]
fn debug_rep_steps() {
    let entry = catalog::load_entry("g23-a").unwrap();
    let rep = entry.representation.as_ref().unwrap();
    for expr in ["x2", "x3", "x12", "x123", "[x12,x123]", "x1*x2", "x2*x1"] {
        let e = parse_expression(expr, &entry.braiding).unwrap();
        let m = rep.evaluate(&e).unwrap();
        let nz = m.iter().flatten().filter(|c| !c.is_zero()).count();
        eprintln!("rho({}): {} nonzero entries", expr, nz);
    }
}

#[test]
fn solve_hard_311() {
    struct Case {
        id: &'static str,
        conductor: u64,
        q: Vec<Vec<i64>>,
    }
    let cases = vec![
        Case { id: "3.11-brj23", conductor: 18, q: vec![vec![13,2],vec![0,9]] },
        Case { id: "3.11-ufo9", conductor: 24, q: vec![vec![1,19],vec![0,12]] },
        Case { id: "3.11-ufo11-b", conductor: 30, q: vec![vec![6,19],vec![0,15]] },
    ];
    for case in cases {
        let q = BraidingMatrix::new(case.conductor, case.q.clone()).unwrap();
        let a = parse_expression("[x1,[x112,x12]]", &q).unwrap();
        let deg = a.degree().unwrap();
        let lower = standard_lower_relations(&q, &deg, 8).unwrap();
        let da = defect_reduced(&q, &lower, &a);
        eprintln!("{}: defect(A) support:", case.id);
        let mut keys: Vec<_> = da.keys().collect();
        keys.sort_by(|x, y| x.0.deglex_cmp(&y.0).then(x.1.deglex_cmp(&y.1)));
        for k in keys {
            eprintln!("   {} (x) {}  coeff {}", k.0, k.1, render(&da[k]));
        }
        // candidate second generators of degree (4,2)
        for bexpr in ["x112*x112", "[x1112,x2]", "x1112*x2", "x1*x112*x2", "[[x1112,x2],x1]"] {
            if let Ok(b) = parse_expression(bexpr, &q) {
                if b.degree() == Some(deg.clone()) {
                    let db = defect_reduced(&q, &lower, &b);
                    if let Some(c) = solve_ratio(&da, &db) {
                        eprintln!("   {}: A - C*{} with C = {}", case.id, bexpr, grammar_scalar(&c));
                    }
                }
            }
        }
    }
}

#[test]
fn print_solved_scalars() {
    struct Case {
        id: &'static str,
        conductor: u64,
        q: Vec<Vec<i64>>,
        a: &'static str,
        b: &'static str,
    }
    let cases = vec![
        Case { id: "3.9", conductor: 12, q: vec![vec![4,5],vec![0,4]],
               a: "[x1,[x12,x2]]", b: "x12*x12" },
        Case { id: "3.11-brj25", conductor: 10, q: vec![vec![1,6],vec![0,5]],
               a: "[x1,[x112,x12]]", b: "x112*x112" },
        Case { id: "3.11-stdg2", conductor: 8, q: vec![vec![2,3],vec![0,4]],
               a: "[x1,[x112,x12]]", b: "x112*x112" },
        Case { id: "3.11-ufo10-plus", conductor: 20, q: vec![vec![8,3],vec![0,10]],
               a: "[x1,[x112,x12]]", b: "x112*x112" },
        Case { id: "3.11-ufo10-minus", conductor: 20, q: vec![vec![8,13],vec![0,10]],
               a: "[x1,[x112,x12]]", b: "x112*x112" },
        Case { id: "3.11-ufo11-a", conductor: 30, q: vec![vec![6,23],vec![0,7]],
               a: "[x1,[x112,x12]]", b: "x112*x112" },
        Case { id: "3.11-ufo12", conductor: 14, q: vec![vec![3,13],vec![0,7]],
               a: "[x1,[x112,x12]]", b: "x112*x112" },
        Case { id: "3.14-ufo9", conductor: 24, q: vec![vec![8,5],vec![0,12]],
               a: "[x112,[[x112,x12],x12]]", b: "[x112,x12]*[x112,x12]" },
        Case { id: "3.14-ufo12", conductor: 14, q: vec![vec![9,1],vec![0,7]],
               a: "[x112,[[x112,x12],x12]]", b: "[x112,x12]*[x112,x12]" },
    ];
    for case in cases {
        let q = BraidingMatrix::new(case.conductor, case.q.clone()).unwrap();
        let a = parse_expression(case.a, &q).unwrap();
        let b = parse_expression(case.b, &q).unwrap();
        let deg = a.degree().unwrap();
        let lower = standard_lower_relations(&q, &deg, 8).unwrap();
        let da = defect_reduced(&q, &lower, &a);
        let db = defect_reduced(&q, &lower, &b);
        match solve_ratio(&da, &db) {
            Some(c) => eprintln!("{}|{} - ({})*{}", case.id, case.a, grammar_scalar(&c), case.b),
            None => eprintln!("{}|UNSOLVED", case.id),
        }
    }
}

/// solve defect(A) = sum_k C_k defect(B_k) by exact Gaussian elimination
fn solve_linear(
    a: &HashMap<(Word, Word), Cyclotomic>,
    bs: &[HashMap<(Word, Word), Cyclotomic>],
) -> Option<Vec<Cyclotomic>> {
    let mut keys: Vec<(Word, Word)> = a.keys().copied().collect();
    for b in bs {
        keys.extend(b.keys().copied());
    }
    keys.sort_by(|x, y| x.0.deglex_cmp(&y.0).then(x.1.deglex_cmp(&y.1)));
    keys.dedup();
    let n = bs.len();
    // rows: one per key: sum_k C_k * b_k[key] = a[key]
    let mut rows: Vec<Vec<Cyclotomic>> = Vec::new();
    for key in &keys {
        let mut row: Vec<Cyclotomic> = bs
            .iter()
            .map(|b| b.get(key).cloned().unwrap_or_else(|| Cyclotomic::zero(1)))
            .collect();
        row.push(a.get(key).cloned().unwrap_or_else(|| Cyclotomic::zero(1)));
        rows.push(row);
    }
    // gaussian elimination
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(r) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, r);
        let inv = rows[pivot_row][col].inv().unwrap();
        for c in col..=n {
            rows[pivot_row][c] = rows[pivot_row][c].mul(&inv);
        }
        for r2 in 0..rows.len() {
            if r2 != pivot_row && !rows[r2][col].is_zero() {
                let f = rows[r2][col].clone();
                for c in col..=n {
                    let v = rows[r2][c].sub(&f.mul(&rows[pivot_row][c]));
                    rows[r2][c] = v;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    // consistency: all remaining rows must have zero rhs
    for r in rows.iter().skip(pivot_row) {
        if !r[n].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Cyclotomic::zero(1); n];
    for (k, &col) in pivots.iter().enumerate() {
        sol[col] = rows[k][n].clone();
    }
    // verify
    for key in &keys {
        let mut acc = Cyclotomic::zero(1);
        for (k, b) in bs.iter().enumerate() {
            if let Some(v) = b.get(key) {
                acc = acc.add(&sol[k].mul(v));
            }
        }
        let target = a.get(key).cloned().unwrap_or_else(|| Cyclotomic::zero(1));
        if acc != target {
            return None;
        }
    }
    Some(sol)
}

#[test]
fn solve_hard_311_two_terms() {
    struct Case {
        id: &'static str,
        conductor: u64,
        q: Vec<Vec<i64>>,
    }
    let cases = vec![
        Case { id: "3.11-brj23", conductor: 18, q: vec![vec![13,2],vec![0,9]] },
        Case { id: "3.11-ufo9", conductor: 24, q: vec![vec![1,19],vec![0,12]] },
        Case { id: "3.11-ufo11-b", conductor: 30, q: vec![vec![6,19],vec![0,15]] },
    ];
    let candidates = [
        "x112*x112",
        "[x1112,x12]",
        "[[x1112,x2],x12]",
        "x1112*x12",
        "x12*x1112",
        "[x1112,x2]*x1",
        "x1*[x1112,x2]",
        "[[x1112,x12],x2]",
        "[x11122,x12]",
    ];
    for case in cases {
        let q = BraidingMatrix::new(case.conductor, case.q.clone()).unwrap();
        let a = parse_expression("[x1,[x112,x12]]", &q).unwrap();
        let deg = a.degree().unwrap();
        let lower = standard_lower_relations(&q, &deg, 8).unwrap();
        let da = defect_reduced(&q, &lower, &a);
        let mut solved = false;
        'search: for (i, b1e) in candidates.iter().enumerate() {
            let Ok(b1) = parse_expression(b1e, &q) else { continue };
            if b1.degree() != Some(deg.clone()) || b1.is_zero() {
                continue;
            }
            let db1 = defect_reduced(&q, &lower, &b1);
            for b2e in candidates.iter().skip(i + 1) {
                let Ok(b2) = parse_expression(b2e, &q) else { continue };
                if b2.degree() != Some(deg.clone()) || b2.is_zero() {
                    continue;
                }
                let db2 = defect_reduced(&q, &lower, &b2);
                if let Some(sol) = solve_linear(&da, &[db1.clone(), db2.clone()]) {
                    eprintln!(
                        "{}| A - ({})*{} - ({})*{}",
                        case.id,
                        grammar_scalar(&sol[0]),
                        b1e,
                        grammar_scalar(&sol[1]),
                        b2e
                    );
                    solved = true;
                    break 'search;
                }
            }
        }
        if !solved {
            eprintln!("{}| still unsolved", case.id);
        }
    }
}

#[test]
fn solve_37iii_and_31i() {
    // 3.7iii: find C with [[x123,x2],x3] - C*[[x123,x3],x2] primitive and
    // nonzero mod lower
    let q = BraidingMatrix::new(6, vec![vec![5, 1, 0], vec![0, 2, 4], vec![0, 0, 3]]).unwrap();
    let a = parse_expression("[[x123,x2],x3]", &q).unwrap();
    let b = parse_expression("[[x123,x3],x2]", &q).unwrap();
    let deg = a.degree().unwrap();
    let lower = standard_lower_relations(&q, &deg, 8).unwrap();
    let da = defect_reduced(&q, &lower, &a);
    let db = defect_reduced(&q, &lower, &b);
    match solve_ratio(&da, &db) {
        Some(c) => {
            let pres = Presentation::new("t", q.clone(), lower.clone()).unwrap();
            let quo = Quotient::new(pres);
            let rel = a.sub(&b.scale(&c));
            eprintln!(
                "3.7iii| C = {}; combo nonzero mod lower: {}",
                grammar_scalar(&c),
                !quo.is_zero(&rel).unwrap()
            );
        }
        None => eprintln!("3.7iii| no single scalar"),
    }

    // 3.1i: triangle relation: x123 + C1 x2*x13 + C2 [x13,x2] primitive?
    let q = BraidingMatrix::new(6, vec![vec![3, 2, 2], vec![0, 3, 2], vec![0, 0, 3]]).unwrap();
    let a = parse_expression("x123", &q).unwrap();
    let b1 = parse_expression("x2*x13", &q).unwrap();
    let b2 = parse_expression("[x13,x2]", &q).unwrap();
    let deg = a.degree().unwrap();
    let lower = standard_lower_relations(&q, &deg, 8).unwrap();
    let da = defect_reduced(&q, &lower, &a);
    let db1 = defect_reduced(&q, &lower, &b1);
    let db2 = defect_reduced(&q, &lower, &b2);
    match solve_linear(&da, &[db1, db2]) {
        Some(sol) => eprintln!(
            "3.1i| x123 - ({})*x2*x13 - ({})*[x13,x2]",
            grammar_scalar(&sol[0]),
            grammar_scalar(&sol[1])
        ),
        None => eprintln!("3.1i| unsolved"),
    }
}

#[test]
fn solve_caseb_steps() {
    // solve nf(A) = C1 nf(B1) + C2 nf(B2) in eminent-b
    let entry = catalog::load_entry("g23-b").unwrap();
    let quo = Quotient::new(entry.presentation("eminent").unwrap().clone());
    let solve_elem = |a: &FreeElement, bs: &[&FreeElement]| -> Option<Vec<Cyclotomic>> {
        let na = quo.normal_form(a).unwrap();
        let nbs: Vec<FreeElement> = bs.iter().map(|b| quo.normal_form(b).unwrap()).collect();
        // reuse solve_linear by faking tensor keys (word, empty)
        let pack = |u: &FreeElement| -> HashMap<(Word, Word), Cyclotomic> {
            u.terms()
                .map(|(w, c)| ((*w, Word::empty()), c.clone()))
                .collect()
        };
        solve_linear(&pack(&na), &nbs.iter().map(pack).collect::<Vec<_>>())
    };
    // b-step-19: [x12,x23] = C1 x2*x123 + C2 x1223
    let a = entry.parse("[x12,x23]").unwrap();
    let b1 = entry.parse("x2*x123").unwrap();
    let b2 = entry.parse("@x1223").unwrap();
    match solve_elem(&a, &[&b1, &b2]) {
        Some(sol) => eprintln!(
            "b-step-19| [x12,x23] - ({})*x2*x123 - ({})*@x1223",
            grammar_scalar(&sol[0]),
            grammar_scalar(&sol[1])
        ),
        None => eprintln!("b-step-19| unsolved"),
    }
    // b-step-20: [x1223,x23] = C1 x12332 + C2 x2*x12232
    let a = entry.parse("[@x1223,x23]").unwrap();
    let b1 = entry.parse("@x12332").unwrap();
    let b2 = entry.parse("x2*@x12232").unwrap();
    match solve_elem(&a, &[&b1, &b2]) {
        Some(sol) => eprintln!(
            "b-step-20| [@x1223,x23] - ({})*@x12332 - ({})*x2*@x12232",
            grammar_scalar(&sol[0]),
            grammar_scalar(&sol[1])
        ),
        None => eprintln!("b-step-20| unsolved"),
    }
}

#[test]
fn diagnose_remaining() {
    use prenichols::catalog::lemma_instances;
    let failing = [
        "3.10", "3.13-brj23", "3.13-ufo11", "3.1l", "3.1m", "3.1p", "3.1q",
        "3.2a", "3.2b", "3.2c", "3.6-g4", "3.7ii", "3.7iii", "3.8a", "3.8b",
    ];
    let instances = lemma_instances().unwrap();
    for inst in instances.iter().filter(|i| failing.contains(&i.id.as_str())) {
        let q = &inst.braiding;
        let Ok(rel) = parse_expression(&inst.relation, q) else {
            eprintln!("{}> PARSE ERROR", inst.id);
            continue;
        };
        let Some(deg) = rel.degree() else {
            eprintln!("{}> ZERO/INHOMOGENEOUS", inst.id);
            continue;
        };
        let mut lower = standard_lower_relations(q, &deg, 8).unwrap();
        for l in &inst.lower {
            lower.push(parse_expression(l, q).unwrap());
        }
        let da = defect_reduced(q, &lower, &rel);
        if da.is_empty() {
            eprintln!("{}> primitive now", inst.id);
            continue;
        }
        // summarize defect bidegrees
        let mut bidegs: Vec<(MultiDegree, MultiDegree)> = da
            .keys()
            .map(|(l, r)| (l.degree(q.rank()), r.degree(q.rank())))
            .collect();
        bidegs.sort();
        bidegs.dedup();
        let tokens: Vec<String> = bidegs
            .iter()
            .map(|(l, r)| format!("{}|{}", l, r))
            .collect();
        eprintln!("{}> defect bidegrees: {}", inst.id, tokens.join("  "));
    }
}

#[test]
fn solve_lyndon_311() {
    struct Case {
        id: &'static str,
        conductor: u64,
        q: Vec<Vec<i64>>,
    }
    let cases = vec![
        Case { id: "3.11-brj23", conductor: 18, q: vec![vec![13,2],vec![0,9]] },
        Case { id: "3.11-ufo9", conductor: 24, q: vec![vec![1,19],vec![0,12]] },
        Case { id: "3.11-ufo11-b", conductor: 30, q: vec![vec![6,19],vec![0,15]] },
    ];
    for case in cases {
        let q = BraidingMatrix::new(case.conductor, case.q.clone()).unwrap();
        // Lyndon bracketing of 11122 as the (3,2) root vector, with the
        // 3.1g relation [x112,x12] = 0 available as a lower relation
        let x32 = "[x1,[x1,[x12,x2]]]";
        let a_expr = format!("[x1,{}]", x32);
        let a = parse_expression(&a_expr, &q).unwrap();
        let deg = a.degree().unwrap();
        let mut lower = standard_lower_relations(&q, &deg, 8).unwrap();
        lower.push(parse_expression("[x112,x12]", &q).unwrap());
        let da = defect_reduced(&q, &lower, &a);
        if da.is_empty() {
            eprintln!("{}| [x1,{}] primitive alone (w/ 3.1g lower)", case.id, x32);
            continue;
        }
        let candidates = ["x112*x112", "[x1112,x2]*x1", "x1112*x12", "[x1,[x1112,x2]]"];
        let mut done = false;
        for bexpr in candidates {
            let Ok(b) = parse_expression(bexpr, &q) else { continue };
            if b.degree() != Some(deg.clone()) || b.is_zero() {
                continue;
            }
            let db = defect_reduced(&q, &lower, &b);
            if let Some(c) = solve_ratio(&da, &db) {
                // make sure the combination is nonzero mod lower
                let pres = Presentation::new("t", q.clone(), lower.clone()).unwrap();
                let quo = Quotient::new(pres);
                let rel = a.sub(&b.scale(&c));
                let nonzero = !quo.is_zero(&rel).unwrap();
                eprintln!(
                    "{}| [x1,{}] - ({})*{}   nonzero={}",
                    case.id, x32, grammar_scalar(&c), bexpr, nonzero
                );
                done = true;
                break;
            }
        }
        if !done {
            eprintln!("{}| unsolved with Lyndon vector", case.id);
        }
    }
}

#[test]
fn check_instance_admissibility() {
    use prenichols::rootsys::{enumerate_roots, RootCaps, RootsResult};
    let instances = prenichols::catalog::lemma_instances().unwrap();
    for inst in &instances {
        match enumerate_roots(&inst.braiding, RootCaps::default()) {
            RootsResult::Finite(roots) => {
                eprintln!("{}: finite, {} positive roots", inst.id, roots.len());
            }
            RootsResult::NotFiniteWithinCap { .. } => {
                eprintln!("{}: *** NOT FINITE — instance braiding is inadmissible", inst.id);
            }
        }
    }
}

#[test]
fn search_admissible_instances() {
    use prenichols::rootsys::{enumerate_roots, RootCaps, RootsResult};
    let finite = |q: &BraidingMatrix| -> Option<usize> {
        match enumerate_roots(q, RootCaps::default()) {
            RootsResult::Finite(r) => Some(r.len()),
            _ => None,
        }
    };
    // 3.2a: q11 in G3', q~12 = -1, q22 = -1, q~23^2 = -q11, q~13 = 1, q33 free
    eprintln!("-- 3.2a candidates (conductor 12): q11=z(3,1)=z12^4, q~23 in {{z12^5,z12^11}}, q33 free");
    for e23 in [5i64, 11] {
        for e33 in [6i64, 4, 8, 3, 9, 2, 10, 1, 7, 5, 11] {
            let q = BraidingMatrix::new(12, vec![vec![4, 6, 0], vec![0, 6, e23], vec![0, 0, e33]]).unwrap();
            if let Some(n) = finite(&q) {
                eprintln!("   e23={} e33={} finite |roots|={}", e23, e33, n);
            }
        }
    }
    // 3.2c: q22 = -1, q~12 = q11^{-2}, q33 = q~23^{-1} = -q11^3; q11 free of order n > 2
    eprintln!("-- 3.2c candidates: q11 = z(N,1), conductor lcm(2N)");
    for n in [4u64, 5, 6, 8, 9, 10, 12, 14, 18, 20, 24] {
        let cond = if n % 2 == 0 { n } else { 2 * n };
        let step = (cond / n) as i64;
        let e11 = step;
        let e12 = (-2 * step).rem_euclid(cond as i64);
        let neg_q3 = (cond as i64 / 2 + 3 * step).rem_euclid(cond as i64); // -q11^3
        let e23 = (-neg_q3).rem_euclid(cond as i64); // q~23 = (-q11^3)^{-1}... wait q33 = q~23^{-1} = -q11^3 so q~23 = (-q11^3)^{-1}
        let e33 = neg_q3;
        let q = BraidingMatrix::new(cond, vec![vec![e11, e12, 0], vec![0, (cond/2) as i64, e23], vec![0, 0, e33]]).unwrap();
        if q.entry(0,0).order() <= 2 { continue; }
        if let Some(ct) = finite(&q) {
            eprintln!("   q11 = z({},1): finite |roots|={}", n, ct);
        }
    }
    // 3.1j: q11 = q22 = -1, q~12^2 = q~23^{-1} != 1, q~13 = 1; q33, q~12 free
    eprintln!("-- 3.1j candidates (conductor 12): q~12 = z12^k");
    for k in 1i64..12 {
        let e23 = (-2 * k).rem_euclid(12);
        if e23 == 0 { continue; }
        for e33 in 1i64..12 {
            let q = BraidingMatrix::new(12, vec![vec![6, k, 0], vec![0, 6, e23], vec![0, 0, e33]]).unwrap();
            // extra hypothesis: q33^2 != 1 or q~12^3 != 1
            let q33 = q.entry(2, 2);
            let qt12 = q.sym_entry(0, 1);
            if !(q33.pow(2) != prenichols::scalar::RootOfUnity::one()
                || qt12.pow(3) != prenichols::scalar::RootOfUnity::one()) { continue; }
            if let Some(ct) = finite(&q) {
                eprintln!("   q~12=z12^{} q33=z12^{}: finite |roots|={}", k, e33, ct);
            }
        }
    }
    // 3.1l: q22 = q~12^2 = q~23 in G3', q~13 = 1; q11, q33 free; q11 != -1 or q33 != -1
    eprintln!("-- 3.1l candidates (conductor 12): q22 = z12^4 or z12^8");
    for e22 in [4i64, 8] {
        for e12 in 1i64..12 {
            if (2 * e12).rem_euclid(12) != e22 { continue; }
            for e11 in 1i64..12 {
                for e33 in [6i64, 4, 3, 2, 8] {
                    let q = BraidingMatrix::new(12, vec![vec![e11, e12, 0], vec![0, e22, e22], vec![0, 0, e33]]).unwrap();
                    if e11 == 6 && e33 == 6 { continue; }
                    if let Some(ct) = finite(&q) {
                        eprintln!("   e11={} e12={} e22={} e33={}: finite |roots|={}", e11, e12, e22, e33, ct);
                    }
                }
            }
        }
    }
}
