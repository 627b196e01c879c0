use super::*;
use crate::generic::formula::QFFormula;
use crate::io::parse::parse_diff_poly;
use crate::io::print::poly_to_string;
use crate::pair::check_good_pair;
use crate::poly::GroundField;

fn small() -> FormulaBounds {
    FormulaBounds { n: 1, max_order: 1, max_degree: 1, max_height: 1 }
}

fn ledger(b: EnumerationBounds) -> Vec<String> {
    let mut e = PairEnumerator::new(b).unwrap();
    std::iter::from_fn(|| e.next_event().unwrap()).map(|ev| ev.ledger_line()).collect()
}

fn atom(s: &str) -> QFFormula {
    QFFormula::Atom(parse_diff_poly(s, GroundField::Q, 1).unwrap())
}

#[test]
fn helpers_cover_the_box() {
    let vars = [crate::poly::Var::X(1), crate::poly::Var::X(2)];
    assert_eq!(monomials(&vars, 2).len(), 6);
    assert_eq!(polys_with(GroundField::Q, &monomials(&vars, 1), 1).len(), 27);
}

#[test]
fn formula_counts() {
    let mut e = FormulaEnumerator::new(small());
    assert_eq!(e.atoms().len(), 14);
    assert_eq!(poly_to_string(e.atoms()[0].body()), "x1");
    assert_eq!(e.count_up_to(2), 28u32.into());
    assert_eq!(e.count_up_to(3), 434u32.into());
    assert_eq!(formula_at(small(), 14).unwrap(), QFFormula::not(atom("x1")));
    assert_eq!(formula_at(small(), 28).unwrap(), QFFormula::not(QFFormula::not(atom("x1"))));
    assert_eq!(formula_at(small(), 28 + 14).unwrap(), QFFormula::and(atom("x1"), atom("x1")));
    assert_eq!(formula_at(small(), 28 + 14 + 196).unwrap(), QFFormula::or(atom("x1"), atom("x1")));
}

#[test]
fn formula_rank_inverts_unrank() {
    let mut e = FormulaEnumerator::new(small());
    let mut seen = std::collections::HashSet::new();
    for j in 0..3000u64 {
        let f = e.formula_at(j).unwrap();
        assert_eq!(e.index_of(&f), Some(j));
        assert!(seen.insert(format!("{:?}", f)));
    }
    let scaled = parse_diff_poly("-2*x1' + 2*x1", GroundField::Q, 1).unwrap();
    assert_eq!(e.atom_index(&scaled), e.index_of(&atom("x1' - x1")));
}

#[test]
fn first_pairs_are_frozen() {
    let b = EnumerationBounds::new(1, 1, 1, 1, 5).unwrap();
    assert_eq!(
        ledger(b),
        [
            "emit\t0\t1,1\tr1;V[];W[]",
            "emit\t1\t1,1\tr1;V[];W[u1]",
            "emit\t2\t1,1\tr1;V[x1];W[u1]",
            "emit\t3\t1,1\tr1;V[];W[u1 + 1]",
            "emit\t4\t1,1\tr1;V[];W[u1 - 1]",
        ]
    );
    assert!(ledger(EnumerationBounds { count: 0, ..b }).is_empty());
}

#[test]
fn graph_of_square_is_listed() {
    let b = EnumerationBounds::new(1, 1, 2, 1, 40).unwrap();
    let found = enumerate_pairs(b).unwrap().into_iter().find(|e| e.candidate.encoding == "r1;V[];W[u1 - x1^2]");
    let e = found.expect("graph of x1^2 within the bounds");
    assert_eq!(e.index.ordinal, 14);
    assert_eq!(e.index.cell, (1, 2));
}

#[test]
fn emissions_repass_and_are_distinct() {
    let b = EnumerationBounds::new(1, 2, 1, 1, 30).unwrap();
    let out = enumerate_pairs(b).unwrap();
    assert_eq!(out.len(), 30);
    let mut bases = std::collections::HashSet::new();
    for e in &out {
        check_good_pair(e.pair.v.clone(), e.pair.w.clone(), &Default::default()).unwrap();
        let w: Vec<String> = e.pair.w.ideal.reduced_basis().unwrap().polys().iter().map(poly_to_string).collect();
        assert!(bases.insert(w), "{}", e.candidate.encoding);
    }
}

#[test]
fn resume_matches_one_run() {
    let b = EnumerationBounds::new(1, 2, 1, 1, 25).unwrap();
    let whole = ledger(b);
    assert!(whole.iter().any(|l| l.starts_with("merge")));
    let head = ledger(EnumerationBounds { count: 10, ..b });
    let mut e = PairEnumerator::resume(EnumerationBounds { count: 15, ..b }, &head.join("\n")).unwrap();
    let tail: Vec<String> = std::iter::from_fn(|| e.next_event().unwrap()).map(|ev| ev.ledger_line()).collect();
    assert_eq!([head, tail].concat(), whole);
    assert!(PairEnumerator::resume(b, "emit\t0\t1,1\tr9;V[];W[]").is_err());
}

#[test]
fn listing_membership_examples() {
    let pb = EnumerationBounds::new(1, 1, 2, 1, 1).unwrap();
    let fb = FormulaBounds { n: 1, max_order: 1, max_degree: 2, max_height: 1 };
    let mut fe = FormulaEnumerator::new(fb);
    let j = |fe: &mut FormulaEnumerator, s: &str| fe.atom_index(&parse_diff_poly(s, GroundField::Q, 1).unwrap()).unwrap();
    let square = j(&mut fe, "x1' - x1^2");
    let flat = j(&mut fe, "x1'");
    let taut = j(&mut fe, "0");
    assert!(listing_membership(14, square, pb, fb).unwrap());
    assert!(!listing_membership(0, flat, pb, fb).unwrap());
    for i in [0, 3, 14] {
        assert!(listing_membership(i, taut, pb, fb).unwrap());
    }
}

#[test]
fn merged_candidates_share_the_type() {
    // r2;V[x2 - x1];W[u2 - x1] restates x1' = x1 with two blocks.
    let b = EnumerationBounds::new(1, 2, 1, 1, 1).unwrap();
    let cand = candidates(&b).unwrap().into_values().flatten().find(|c| c.encoding == "r2;V[x2 - x1];W[u2 - x1]").unwrap();
    let (v, w) = cand.presentations(1).unwrap();
    let t = crate::generic::DeltaGenericType::new(check_good_pair(v, w, &Default::default()).unwrap()).unwrap();
    let stacked = |s: &str| crate::generic::read_stacked(1, 1, parse_diff_poly(s, GroundField::Q, 1).unwrap().body());
    assert_eq!(t.member(&stacked("x1' - x1")).unwrap(), crate::generic::Verdict::Zero);
    assert_eq!(t.member(&stacked("x1''' - x1")).unwrap(), crate::generic::Verdict::Zero);
    assert_eq!(t.member(&stacked("x1' + x1")).unwrap(), crate::generic::Verdict::Nonzero);
    let mut e = PairEnumerator::new(EnumerationBounds { count: 60, ..b }).unwrap();
    let merge = std::iter::from_fn(|| e.next_event().unwrap())
        .find_map(|ev| match ev {
            Event::Merge { into, encoding } if encoding == cand.encoding => Some(into),
            _ => None,
        });
    let into = merge.expect("merged");
    let target = pair_at(b, into).unwrap();
    assert_eq!(target.candidate.encoding, "r1;V[];W[u1 - x1]");
}
