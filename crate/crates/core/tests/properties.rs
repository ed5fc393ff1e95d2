use proptest::prelude::*;
use shuffle_core::criterion::{build_vc_element, ext_row};
use shuffle_core::reduction::{reduce_to_epoint, rho_a, ModuleVector};
use shuffle_core::{
    normalize_tuple, ATContext, BiPoly, FieldSpec, LaurentSeries, Poly, RationalFunction, ShuffleTuple, Var,
};

const ORDERS: [u64; 8] = [2, 3, 4, 5, 7, 8, 9, 25];

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop::sample::select(&ORDERS[..]).prop_map(|q| FieldSpec::from_order(q).unwrap())
}

fn elems(q: u32, len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..q, len)
}

fn poly_in(f: &FieldSpec, var: Var, max_len: usize) -> impl Strategy<Value = Poly> {
    let f = f.clone();
    prop::collection::vec(0..f.q(), 0..max_len).prop_map(move |c| Poly::from_coeffs(&f, var, c))
}

fn bipoly_in(f: &FieldSpec, t_len: usize, theta_len: usize) -> impl Strategy<Value = BiPoly> {
    let f = f.clone();
    prop::collection::vec(poly_in(&f, Var::Theta, theta_len), 0..t_len).prop_map(move |c| BiPoly::from_coeffs(&f, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((f, v) in field_strategy().prop_flat_map(|f| { let q = f.q(); (Just(f), elems(q, 3)) })) {
        let (a, b, c) = (v[0], v[1], v[2]);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.pow(a, f.q() as u64), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn poly_division((a, b) in field_strategy().prop_flat_map(|f| (poly_in(&f, Var::Theta, 9), poly_in(&f, Var::Theta, 6)))) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.divmod(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a.clone());
        prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
        let g = a.gcd(&b);
        prop_assert!(a.divmod(&g).unwrap().1.is_zero());
        prop_assert!(b.divmod(&g).unwrap().1.is_zero());
    }

    #[test]
    fn rational_field_laws((x, y) in field_strategy().prop_flat_map(|f| (
        (poly_in(&f, Var::Theta, 4), poly_in(&f, Var::Theta, 4)),
        (poly_in(&f, Var::Theta, 4), poly_in(&f, Var::Theta, 4)),
    ))) {
        prop_assume!(!x.1.is_zero() && !y.1.is_zero());
        let a = RationalFunction::new(x.0, x.1).unwrap();
        let b = RationalFunction::new(y.0, y.1).unwrap();
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        prop_assert!(a.den().is_monic());
        if !b.is_zero() {
            prop_assert_eq!(a.mul(&b).div(&b).unwrap(), a.clone());
        }
        let order = 12;
        let product = LaurentSeries::from_rational(&a.mul(&b), order);
        let series = LaurentSeries::from_rational(&a, order + 10).mul(&LaurentSeries::from_rational(&b, order + 10));
        prop_assert!(product.agrees_with(&series));
    }

    #[test]
    fn twist_is_multiplicative((f, g) in field_strategy().prop_flat_map(|f| (bipoly_in(&f, 3, 4), bipoly_in(&f, 3, 4)))) {
        prop_assert_eq!((&f * &g).twist(1), &f.twist(1) * &g.twist(1));
        prop_assert_eq!(f.twist(1).twist(1), f.twist(2));
    }

    #[test]
    fn split_reconstructs((f, k) in field_strategy().prop_flat_map(|f| (bipoly_in(&f, 6, 4), 1usize..5))) {
        let field = f.field().clone();
        let (g, digits) = f.split_t_minus_theta(k);
        let rebuilt = &(&g * &BiPoly::t_minus_theta(&field).pow(k as u32))
            + &BiPoly::from_t_minus_theta_expansion(&field, &digits);
        prop_assert_eq!(rebuilt, f);
    }
}

fn constant_tuple(f: &FieldSpec, r: usize, s: usize, v: &[u32]) -> ShuffleTuple {
    ShuffleTuple::from_entries(r, s, v.iter().map(|&c| RationalFunction::constant(f, c)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// With `Γ_C = 1` the row and the point depend affinely on `C`:
    /// `row(C_1) + row(C_2) = row(C_1 + C_2) + row(0)`, and likewise for `v_C`.
    #[test]
    fn baer_compatibility(
        (rs, v1, v2) in (prop::sample::select(&[(1usize, 1usize), (1, 2), (2, 2), (1, 3), (2, 3)][..]))
            .prop_flat_map(|(r, s)| (Just((r, s)), elems(5, r + s), elems(5, r + s)))
    ) {
        let f = FieldSpec::prime(5).unwrap();
        let (r, s) = rs;
        let at = ATContext::new(&f, r + s).unwrap();
        let c1 = constant_tuple(&f, r, s, &v1);
        let c2 = constant_tuple(&f, r, s, &v2);
        let zero = ShuffleTuple::zero(r, s, &f).unwrap();
        let sum = c1.add(&c2).unwrap();
        let norm = |c: &ShuffleTuple| normalize_tuple(c, &f).unwrap();
        for c in [&c1, &c2, &sum, &zero] {
            prop_assert!(norm(c).gamma_c.is_one());
        }
        let row = |c: &ShuffleTuple| ext_row(&norm(c), r, s, &at).unwrap();
        prop_assert_eq!(row(&c1).baer_sum(&row(&c2)).unwrap(), row(&sum).baer_sum(&row(&zero)).unwrap());

        let point = |c: &ShuffleTuple| reduce_to_epoint(&build_vc_element(&norm(c), r, s, &at).unwrap(), &at).unwrap();
        prop_assert_eq!(point(&c1).add(&point(&c2)), point(&sum).add(&point(&zero)));
    }

    /// The row form and the direct element give the same `w`, and scaling the
    /// row by `a` matches `ρ_a` computed by Horner's rule.
    #[test]
    fn row_and_element_agree(v in elems(3, 3), a in prop::collection::vec(0u32..3, 1..5)) {
        let f = FieldSpec::prime(3).unwrap();
        let at = ATContext::new(&f, 3).unwrap();
        let mut entries: Vec<RationalFunction> = v.iter().map(|&c| RationalFunction::constant(&f, c)).collect();
        entries[1] = RationalFunction::from_poly(Poly::from_ints(&f, Var::Theta, &[0, v[1] as i64, 0, 1]));
        let c = ShuffleTuple::from_entries(1, 2, entries).unwrap();
        let nt = normalize_tuple(&c, &f).unwrap();
        let w = build_vc_element(&nt, 1, 2, &at).unwrap();
        let row = ext_row(&nt, 1, 2, &at).unwrap();
        prop_assert_eq!(row.to_module_vector(&at).unwrap(), w.clone());

        let a = Poly::from_coeffs(&f, Var::T, a);
        let direct = reduce_to_epoint(&row.scalar_action(&a).to_module_vector(&at).unwrap(), &at).unwrap();
        let horner = rho_a(&a, &reduce_to_epoint(&w, &at).unwrap(), &at).unwrap();
        prop_assert_eq!(direct, horner);
    }
}

#[test]
fn zero_tuple_gives_zero_element_when_gamma0_vanishes() {
    let f = FieldSpec::prime(3).unwrap();
    let at = ATContext::new(&f, 3).unwrap();
    let nt = shuffle_core::NormalizedTuple {
        gamma_c: Poly::one(&f, Var::Theta),
        beta0: Poly::zero(&f, Var::T),
        gamma0: Poly::zero(&f, Var::T),
        alpha: vec![Poly::zero(&f, Var::T); 2],
    };
    assert!(build_vc_element(&nt, 1, 2, &at).unwrap().is_zero());
    assert_eq!(ModuleVector::zero(&f, 3), build_vc_element(&nt, 1, 2, &at).unwrap().with_sigma_shift(0));
}
