use num_bigint::BigInt;
use num_rational::BigRational;

use super::*;
use crate::generic::{DeltaGenericType, Verdict};
use crate::io::parse::{parse_diff_poly, parse_poly};
use crate::pair::{check_good_pair, CheckOptions, Family, GoodPair, Primality, RationalPoint, VarietyPresentation};
use crate::poly::GroundField;

const Q: GroundField = GroundField::Q;

fn pair(field: GroundField, n: u32, v: &[&str], vf: Family, w: &[&str], wf: Family) -> GoodPair {
    let p = |s: &[&str]| s.iter().map(|g| parse_poly(g, field).unwrap()).collect::<Vec<_>>();
    let v = VarietyPresentation::base(field, n, p(v), Primality::Constructed(vf)).unwrap();
    let w = VarietyPresentation::total(field, n, p(w), Primality::Constructed(wf)).unwrap();
    check_good_pair(v, w, &CheckOptions::default()).unwrap()
}

fn int(k: i64) -> BigRational {
    BigRational::from(BigInt::from(k))
}

fn e1() -> GoodPair {
    pair(Q, 1, &[], Family::Affine, &["u1 - x1^2"], Family::Graph)
        .with_point(Some(RationalPoint { t: None, coords: vec![int(1)] }))
}

fn e2() -> GoodPair {
    pair(Q, 1, &[], Family::Affine, &[], Family::Affine)
}

fn e3() -> GoodPair {
    pair(Q, 2, &["x1^2 + x2^2 - 1"], Family::Hypersurface, &["x1^2 + x2^2 - 1", "x1*u1 + x2*u2"], Family::Bundle)
}

fn e7() -> GoodPair {
    let f = GroundField::Qt;
    pair(f, 1, &["x1^2 - t"], Family::Hypersurface, &["x1^2 - t", "2*x1*u1 - 1"], Family::Graph)
        .with_point(Some(RationalPoint { t: Some(int(1)), coords: vec![int(1)] }))
}

fn q(p: &GoodPair, s: &str) -> crate::diff::DiffPolynomial {
    parse_diff_poly(s, p.field(), p.n()).unwrap()
}

#[test]
fn subst_examples() {
    let p = e1();
    assert_eq!(subst_oracle(&p, &q(&p, "x1'' - 2*x1^3")).unwrap(), Verdict::Zero);
    assert_eq!(subst_oracle(&p, &q(&p, "x1' - x1")).unwrap(), Verdict::Nonzero);
    assert_eq!(subst_oracle(&p, &q(&p, "0")).unwrap(), Verdict::Zero);
    let p = e7();
    assert_eq!(subst_oracle(&p, &q(&p, "2*x1*x1' - 1")).unwrap(), Verdict::Zero);
    assert_eq!(subst_oracle(&p, &q(&p, "4*t*x1'' + 2*x1'")).unwrap(), Verdict::Zero);
    assert_eq!(subst_oracle(&p, &q(&p, "4*t*x1'' + x1'")).unwrap(), Verdict::Nonzero);
    assert!(subst_oracle(&e3(), &q(&e3(), "x1")).is_err());
}

#[test]
fn series_examples() {
    let p = e1();
    // y' = y^2, y(0) = 1: y = 1/(1 - τ).
    let x = integrate(&p, p.point.as_ref().unwrap(), 6, 0).unwrap();
    assert_eq!(x[0].0, vec![int(1); 7]);
    assert_eq!(series_oracle(&p, &q(&p, "x1'' - 2*x1^3"), 12, 0).unwrap(), SeriesVerdict::ConfirmZero(12));
    // y' - y = y^2 - y has coefficients 0, 1, 2, ... at y(0) = 1.
    assert_eq!(
        series_oracle(&p, &q(&p, "x1' - x1"), 12, 0).unwrap(),
        SeriesVerdict::RefuteZero { order: 1, value: int(1) }
    );
    let p = e2();
    assert!(matches!(series_oracle(&p, &q(&p, "x1^(5)"), 12, 7).unwrap(), SeriesVerdict::RefuteZero { .. }));
    let p = e7();
    assert_eq!(series_oracle(&p, &q(&p, "2*x1*x1' - 1"), 12, 0).unwrap(), SeriesVerdict::ConfirmZero(12));
    assert!(matches!(series_oracle(&p, &q(&p, "x1' - x1"), 12, 0).unwrap(), SeriesVerdict::RefuteZero { .. }));
}

#[test]
fn points_are_found() {
    let p = e3();
    let pt = choose_point(&p, 3).unwrap();
    let (a, b) = (&pt.coords[0], &pt.coords[1]);
    assert_eq!(a * a + b * b, int(1));
    assert_eq!(series_oracle(&p, &q(&p, "x1*x1' + x2*x2'"), 16, 3).unwrap(), SeriesVerdict::ConfirmZero(16));
    assert!(matches!(series_oracle(&p, &q(&p, "x1''"), 12, 3).unwrap(), SeriesVerdict::RefuteZero { .. }));
    let mut p = e7();
    p.point = None;
    let pt = choose_point(&p, 11).unwrap();
    assert_eq!(&pt.coords[0] * &pt.coords[0], pt.t.clone().unwrap());
}

#[test]
fn refutation_is_sound_and_confirmation_monotone() {
    let queries = ["x1'' - x1'^2", "x1''' - 6*x1^4", "x1'^2 - x1^4", "x1*x1'' - 2*x1'^2", "x1' + 1"];
    let p = e1();
    let t = DeltaGenericType::new(p.clone()).unwrap();
    for s in queries {
        let f = q(&p, s);
        let verdict = t.member(&f).unwrap();
        let big = series_oracle(&p, &f, 14, 1).unwrap();
        if let SeriesVerdict::RefuteZero { .. } = big {
            assert_eq!(verdict, Verdict::Nonzero, "{}", s);
        }
        if let SeriesVerdict::ConfirmZero(_) = big {
            for n in 3..14 {
                assert_eq!(series_oracle(&p, &f, n, 1).unwrap(), SeriesVerdict::ConfirmZero(n));
            }
        }
    }
}
