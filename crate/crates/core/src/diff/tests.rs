use super::*;
use crate::io::parse::{parse_diff_poly, parse_poly};
use crate::poly::var::x_vars;
use crate::poly::{GroundElement, Monomial};
use proptest::prelude::*;

fn d(s: &str) -> DiffPolynomial {
    parse_diff_poly(s, GroundField::Q, 3).unwrap()
}

fn dt(s: &str) -> DiffPolynomial {
    parse_diff_poly(s, GroundField::Qt, 3).unwrap()
}

fn ideal(field: GroundField, n: u32, gens: &[&str]) -> Ideal {
    let gens = gens.iter().map(|s| parse_poly(s, field).unwrap()).collect();
    Ideal::standard(field, x_vars(n), gens).unwrap()
}

fn xu(field: GroundField, n: u32, gens: &[&str]) -> Ideal {
    let mut vars = x_vars(n);
    vars.extend(crate::poly::var::u_vars(n));
    let gens = gens.iter().map(|s| parse_poly(s, field).unwrap()).collect();
    Ideal::standard(field, vars, gens).unwrap()
}

#[test]
fn derivative_examples() {
    assert_eq!(d("x1' - x1^2").derivative(), d("x1'' - 2*x1*x1'"));
    assert!(d("7").derivative().is_zero());
    assert_eq!(dt("x1^2 - t").derivative(), dt("2*x1*x1' - 1"));
    assert_eq!(d("x1' - x1^2").order(), 1);
    assert_eq!(d("x1' - x1^2").derivative().order(), 2);
    assert_eq!(d("x2^(3)").nth_derivative(2), d("x2^(5)"));
}

#[test]
fn tangent_examples() {
    let q = GroundField::Q;
    let t = tangent_ideal(&Ideal::standard(q, x_vars(1), vec![]).unwrap()).unwrap();
    assert!(t.reduced_basis().unwrap().polys().is_empty());
    let t = tangent_ideal(&ideal(q, 2, &["x1^2 + x2^2 - 1"])).unwrap();
    assert!(t.equals(&xu(q, 2, &["x1^2 + x2^2 - 1", "2*x1*u1 + 2*x2*u2"])).unwrap());
    let t = tangent_ideal(&ideal(q, 1, &["x1"])).unwrap();
    assert!(t.equals(&xu(q, 1, &["x1", "u1"])).unwrap());
    assert!(matches!(tangent_ideal(&ideal(q, 1, &["1"])), Err(Error::UnitIdeal(_))));
}

#[test]
fn prolongation_examples() {
    let qt = GroundField::Qt;
    let p = prolongation_ideal(&ideal(qt, 1, &["x1^2 - t"])).unwrap();
    assert!(p.equals(&xu(qt, 1, &["x1^2 - t", "2*x1*u1 - 1"])).unwrap());
    let p = prolongation_ideal(&ideal(qt, 1, &["x1 - t"])).unwrap();
    assert!(p.equals(&xu(qt, 1, &["x1 - t", "u1 - 1"])).unwrap());
    let v = ideal(GroundField::Q, 2, &["x1^2 + x2^2 - 1"]);
    assert_eq!(
        prolongation_ideal(&v).unwrap().generators(),
        tangent_ideal(&v).unwrap().generators()
    );
}

#[test]
fn solved_form_validation() {
    let q = GroundField::Q;
    let eq = |l: Var, r: &str| (l, parse_diff_poly(r, q, 2).unwrap().into_body());
    assert!(DiffSystem::new(q, 1, vec![eq(Var::deriv(1, 2), "x1'")]).is_ok());
    assert!(DiffSystem::new(q, 1, vec![eq(Var::deriv(1, 1), "x1'")]).is_err());
    assert!(DiffSystem::new(q, 2, vec![eq(Var::deriv(1, 1), "x2'"), eq(Var::deriv(2, 1), "x1")]).is_err());
    assert!(DiffSystem::new(q, 2, vec![eq(Var::deriv(2, 1), "x1'")]).is_ok());
    assert!(DiffSystem::new(q, 1, vec![eq(Var::deriv(1, 1), "x1"), eq(Var::deriv(1, 2), "x1")]).is_err());
    let s = DiffSystem::new(q, 1, vec![eq(Var::deriv(1, 1), "x1^2")]).unwrap();
    assert_eq!(s.reduce(&parse_diff_poly("x1''", q, 1).unwrap().into_body()), parse_poly("2*x1^3", q).unwrap());
}

fn small_diff(field: GroundField) -> impl Strategy<Value = Polynomial> {
    let var = (1u32..=2, 0u32..=2).prop_map(|(i, j)| Var::deriv(i, j));
    let coeff = prop_oneof![
        (-3i64..=3).prop_map(GroundElement::int),
        (-2i64..=2).prop_map(move |c| if field == GroundField::Qt {
            GroundElement::int(c).mul(&GroundElement::t())
        } else {
            GroundElement::int(c)
        }),
    ];
    let term = (coeff, prop::collection::vec((var, 1u32..=2), 0..3));
    prop::collection::vec(term, 0..4).prop_map(move |ts| {
        let mut out = Polynomial::zero(field);
        for (c, fs) in ts {
            out.add_term(Monomial::from_pairs(fs), c);
        }
        out
    })
}

fn arb_ideal(field: GroundField) -> impl Strategy<Value = Ideal> {
    let var = (1u32..=3).prop_map(Var::X);
    let coeff = (-2i64..=2).prop_map(GroundElement::int);
    let poly = prop::collection::vec((coeff, prop::collection::vec((var, 1u32..=2), 0..3)), 1..3).prop_map(
        move |ts| {
            let mut out = Polynomial::zero(field);
            for (c, fs) in ts {
                let m = Monomial::from_pairs(fs);
                if m.degree() <= 3 {
                    out.add_term(m, c);
                }
            }
            out
        },
    );
    prop::collection::vec(poly, 1..3).prop_map(move |gens| Ideal::standard(field, x_vars(3), gens).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn derivation_is_leibniz(f in small_diff(GroundField::Qt), g in small_diff(GroundField::Qt)) {
        let (f, g) = (DiffPolynomial::new(2, f), DiffPolynomial::new(2, g));
        let lhs = f.mul(&g).derivative();
        let rhs = f.derivative().mul(&g).add(&f.mul(&g.derivative()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn order_grows_by_one(f in small_diff(GroundField::Q), k in 0u32..3) {
        let f = DiffPolynomial::new(2, f);
        prop_assume!(!f.is_constant());
        prop_assert_eq!(f.nth_derivative(k).order(), f.order() + k);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn prolongation_is_tangent_over_q(v in arb_ideal(GroundField::Q)) {
        prop_assume!(!v.is_unit().unwrap());
        let p = prolongation_ideal(&v).unwrap();
        let t = tangent_ideal(&v).unwrap();
        let pb = p.reduced_basis().unwrap();
        let tb = t.reduced_basis().unwrap();
        prop_assert_eq!(pb.polys(), tb.polys());
    }

    #[test]
    fn prolongation_ignores_generating_set(v in arb_ideal(GroundField::Q)) {
        prop_assume!(!v.is_unit().unwrap());
        let from_basis = prolongation_ideal(&v).unwrap();
        let raw = prolongation_of_generators(GroundField::Q, 3, v.generators()).unwrap();
        prop_assert!(from_basis.equals(&raw).unwrap());
    }
}
