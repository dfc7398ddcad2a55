use std::ops::Bound;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use realrooted::classifier::{canonicalize_k, classify, Classification, FamilyMatch};
use realrooted::expr::{parse_ratfun, print_canonical};
use realrooted::families::*;
use realrooted::sturm::{count_roots_in, SturmChain};
use realrooted::verifier::{check_hypotheses, check_zero_locations, f4_eval_certified, ode_residual, OdeIdentity};
use realrooted::{int, rat, Poly, Rat, RatFun};

#[test]
fn coefficient_recurrences() {
    for n in 2..=25usize {
        let f = build_f2(n).unwrap();
        let ni = n as i64;
        for k in 0..n - 1 {
            let ratio = f.coeff(k + 2) / f.coeff(k + 1);
            let ki = k as i64;
            assert_eq!(ratio, rat(-(ki + ni) * (ni - 1 - ki), (ki + 1) * (ki + 2)), "F2 n={n} k={k}");
        }
    }
    for n in 1..=25usize {
        let b = hn_coeffs(n).unwrap();
        let ni = n as i64;
        for k in 0..n - 1 {
            let ki = k as i64;
            let ratio = b.coeff(k + 2) / b.coeff(k + 1);
            assert_eq!(ratio, rat((ki + 1 - ni) * (ki + 2 + ni), 2 * (ki + 1) * (ki + 2)), "H n={n} k={k}");
        }
    }
}

#[test]
fn hn_solves_its_equation() {
    let one_minus_w2 = Poly::from_ints(&[1, 0, -1]);
    let two_w_plus_two = Poly::from_ints(&[2, 2]);
    for n in 1..=50usize {
        let h = hn(n).unwrap();
        let ni = n as i64;
        let r = &(&(&one_minus_w2 * &h.nth_derivative(2)) - &(&two_w_plus_two * &h.derivative())) + &h.scale(&int(ni * (ni + 1)));
        assert!(r.is_zero(), "n={n}");
        assert_eq!(h.degree(), Some(n));
        assert_eq!(h.eval(&int(-1)), int(0));
    }
}

#[test]
fn hn_roots_simple_and_in_range() {
    for n in (1..=40usize).chain([60, 80]) {
        let h = hn(n).unwrap();
        assert_eq!(h.squarefree_part().unwrap(), h.monic());
        let c = SturmChain::new(&h).unwrap();
        assert_eq!(c.count_between(Bound::Included(&int(-1)), Bound::Excluded(&int(1))), n, "n={n}");
    }
}

#[test]
fn f3_denominator_is_z_to_the_n() {
    for n in 1..=10usize {
        for k in [int(2), rat(3, 2), int(7), int(-1), rat(1, 3), int(-2)] {
            let f = build_f3(n, &k).unwrap();
            assert_eq!(*f.den(), Poly::monomial(int(1), n), "n={n} K={k}");
            assert_ne!(f.num().eval(&int(0)), int(0));
        }
    }
}

#[test]
fn f3_over_minus_k_tends_to_f4() {
    for n in 1..=10usize {
        let f4 = build_f4(n).unwrap();
        let gap = |k: &Rat| {
            let f3 = build_f3(n, k).unwrap().scale(&-k.recip());
            assert_eq!(f3.den(), f4.den());
            max_coeff_gap(f3.num(), f4.num())
        };
        // c from a moderate K; the gap is O(1/K) so it must keep shrinking
        let k0 = int(1000);
        let c = gap(&k0) * &k0 * int(2);
        let big = int(1_000_000);
        let g = gap(&big);
        assert!(g > int(0));
        assert!(g <= &c / &big, "n={n}: gap {g} exceeds {c}/K");
    }
}

#[test]
fn f2_zero_locations() {
    for n in 2..=30usize {
        let spec = FamilySpec::canonical(Family::F2 { n }).unwrap();
        let r = check_zero_locations(&spec, &spec.construct().unwrap()).unwrap();
        assert!(r.holds, "n={n}");
    }
}

#[test]
fn f3_roots_positive_for_k_above_one() {
    for k in [rat(3, 2), int(2), int(7)] {
        for n in 1..=12usize {
            let f = build_f3(n, &k).unwrap();
            let c = count_roots_in(f.num(), Bound::Excluded(&int(0)), Bound::Unbounded).unwrap();
            assert_eq!(c, n + 1, "n={n} K={k}");
        }
    }
}

#[test]
fn ode_identities_small() {
    for n in 2..=15usize {
        let f = RatFun::from_poly(build_f2(n).unwrap());
        assert!(ode_residual(&f, &OdeIdentity::f2(n).unwrap()).is_zero());
    }
    for n in 1..=10usize {
        assert!(ode_residual(&build_f4(n).unwrap(), &OdeIdentity::f4(n).unwrap()).is_zero());
        for k in [int(2), int(-1), rat(1, 3)] {
            assert!(ode_residual(&build_f3(n, &k).unwrap(), &OdeIdentity::f3(n, &k).unwrap()).is_zero());
        }
    }
    for q in [-5i64, -1, 2, 5] {
        assert!(ode_residual(&build_power(q).unwrap(), &OdeIdentity::power(q).unwrap()).is_zero());
    }
}

#[test]
fn hypotheses_hold_on_families() {
    for n in 1..=12usize {
        for k in [rat(3, 2), int(2), int(7)] {
            assert!(check_hypotheses(&build_f3(n, &k).unwrap()).unwrap().overall, "F3 n={n} K={k}");
        }
        assert!(check_hypotheses(&build_f4(n).unwrap()).unwrap().overall, "F4 n={n}");
    }
    for n in 2..=12usize {
        let f = RatFun::from_poly(build_f2(n).unwrap());
        assert!(check_hypotheses(&f).unwrap().overall, "F2 n={n}");
    }
    for q in (-5i64..=5).filter(|q| *q != 0 && *q != 1) {
        assert!(check_hypotheses(&build_power(q).unwrap()).unwrap().overall, "Q={q}");
    }
}

#[test]
fn nested_enclosures() {
    for x in [rat(1, 1), rat(-7, 2), int(5), rat(-25, 3)] {
        let mut prev = f4_eval_certified(&x, &rat(1, 10)).unwrap();
        let mut tol = rat(1, 10);
        for _ in 0..6 {
            tol /= int(1000);
            let next = f4_eval_certified(&x, &tol).unwrap();
            assert!(prev.contains_interval(&next), "x={x}");
            prev = next;
        }
    }
}

#[test]
fn canonical_print_parse_fixed_point() {
    let mut specs = Vec::new();
    for n in 1..=20usize {
        specs.push(Family::F3 { n, k: int(2) });
        specs.push(Family::F3 { n, k: rat(-1, 3) });
        specs.push(Family::F4 { n });
        specs.push(Family::BesselTrunc { terms: n });
        if n >= 2 {
            specs.push(Family::F2 { n });
        }
    }
    for fam in specs {
        let f = FamilySpec::canonical(fam.clone()).unwrap().construct().unwrap();
        let text = print_canonical(&f);
        let back = parse_ratfun(&text).unwrap();
        assert_eq!(back, f, "{fam:?}");
        assert_eq!(print_canonical(&back), text);
    }
}

fn random_rat(rng: &mut impl Rng, allow_zero: bool) -> Rat {
    loop {
        let n: i64 = rng.gen_range(-9..=9);
        if n != 0 || allow_zero {
            return rat(n, rng.gen_range(1..=9));
        }
    }
}

fn random_frame(rng: &mut impl Rng) -> Frame {
    Frame::new(random_rat(rng, false), random_rat(rng, false), random_rat(rng, true)).unwrap()
}

fn expect_match(f: &RatFun) -> FamilyMatch {
    match classify(f).unwrap() {
        Classification::Match(m) => *m,
        Classification::NoMatch(nm) => panic!("NO_MATCH for {f}: {}", nm.reason),
    }
}

fn assert_round_trip(family: Family, frame: Frame) -> FamilyMatch {
    let spec = FamilySpec::new(family.clone(), frame).unwrap();
    let input = spec.construct().unwrap();
    let m = expect_match(&input);
    assert!(m.exact);
    let rebuilt = m.spec.construct().unwrap();
    assert_eq!(rebuilt, input, "frame must reproduce the input");
    match (&family, &m.spec.family) {
        (Family::F3 { n, k }, Family::F3 { n: n2, k: k2 }) => {
            assert_eq!(n, n2);
            assert_eq!(*k2, canonicalize_k(k).unwrap());
        }
        (a, b) => assert_eq!(a, b),
    }
    m
}

#[test]
fn classifier_round_trip_randomized() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let ks = [int(2), rat(3, 2), int(7), int(-2), rat(1, 3)];
    for _ in 0..100 {
        let q = loop {
            let q: i64 = rng.gen_range(-6..=6);
            if q != 0 && q != 1 {
                break q;
            }
        };
        let m = assert_round_trip(Family::Power { q }, random_frame(&mut rng));
        assert_eq!(m.m, q);

        let n = rng.gen_range(2..=10usize);
        let m = assert_round_trip(Family::F2 { n }, random_frame(&mut rng));
        assert_eq!(m.m, n as i64);

        let n = rng.gen_range(1..=8usize);
        let k = ks[rng.gen_range(0..ks.len())].clone();
        let canon = build_f3(n, &k).unwrap();
        let m = assert_round_trip(Family::F3 { n, k }, random_frame(&mut rng));
        let expected_m = if canon.num().degree() == Some(n + 1) { 1 } else { 0 };
        assert_eq!(m.m, expected_m);

        let n = rng.gen_range(1..=8usize);
        let m = assert_round_trip(Family::F4 { n }, random_frame(&mut rng));
        assert_eq!(m.m, 0);
        assert_eq!(m.s.degree(), Some(3));
    }
}

#[test]
fn k_duality() {
    for n in 1..=6usize {
        for k in [int(2), rat(3, 2), int(7), int(-2), rat(1, 3), int(-1)] {
            let plain = expect_match(&build_f3(n, &k).unwrap());
            let framed = apply_frame(&build_f3(n, &k).unwrap(), &Frame::new(int(1), k.clone(), int(0)).unwrap()).unwrap();
            let dual = expect_match(&framed);
            match (&plain.spec.family, &dual.spec.family) {
                (Family::F3 { k: a, .. }, Family::F3 { k: b, .. }) => {
                    assert_eq!(a, b);
                    assert_eq!(*a, canonicalize_k(&k).unwrap());
                }
                other => panic!("{other:?}"),
            }
        }
    }
}

#[test]
fn hypothesis_failures_still_classify() {
    // h1 and h3 violate the hypotheses but solve the F3 equation
    for n in [1usize, 3] {
        let h = build_f3(n, &int(-1)).unwrap();
        assert!(!check_hypotheses(&h).unwrap().overall);
        let m = expect_match(&h);
        assert_eq!(m.spec.family, Family::F3 { n, k: int(-1) });
    }
}
