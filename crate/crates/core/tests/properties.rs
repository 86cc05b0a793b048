//! Randomized algebraic properties.

mod common;

use proptest::prelude::*;

use common::*;
use quadzero::subspace::gaussian_binomial_u128;
use quadzero::zeros::count_zeros_closed;
use quadzero::{canonicalize, rank, Elem, ElementaryTransform, Field, Pencil, QuadraticForm};

const ORDERS: [u64; 9] = [2, 3, 4, 5, 7, 8, 9, 16, 27];

fn form_strategy(max_n: usize) -> impl Strategy<Value = QuadraticForm> {
    (prop::sample::select(&ORDERS[..7]), 1..=max_n).prop_flat_map(|(q, n)| {
        let slots = n * (n + 1) / 2;
        prop::collection::vec(0..q as u32, slots).prop_map(move |coeffs| {
            let f = Field::of_order(q).unwrap();
            let mut form = QuadraticForm::zero(&f, n);
            let mut k = 0;
            for i in 0..n {
                for j in i..n {
                    form.set_coeff(i, j, Elem(coeffs[k]));
                    k += 1;
                }
            }
            form
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_operations_are_consistent(qi in 0..ORDERS.len(), a in 0u32..1000, b in 0u32..1000, c in 0u32..1000) {
        let f = Field::of_order(ORDERS[qi]).unwrap();
        let (a, b, c) = (Elem(a % f.q()), Elem(b % f.q()), Elem(c % f.q()));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(a, b), f.mul_by_reduction(a, b));
        prop_assert_eq!(f.add(f.sub(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem(1));
            prop_assert_eq!(f.pow(a, f.q() as u64 - 1), Elem(1));
        }
        if f.is_square(a) {
            let s = f.sqrt(a).unwrap();
            prop_assert_eq!(f.mul(s, s), a);
        }
    }

    #[test]
    fn rank_and_count_survive_elementary_transforms(form in form_strategy(4), seed in any::<u64>()) {
        let f = form.field().clone();
        let n = form.n();
        let mut g = form.clone();
        let mut s = seed;
        for _ in 0..8 {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let i = (s >> 33) as usize % n;
            let lam = Elem(1 + (s >> 40) as u32 % (f.q() - 1));
            let t = if n == 1 {
                ElementaryTransform::Scale(0, lam)
            } else {
                let j = (i + 1 + (s >> 20) as usize % (n - 1)) % n;
                match s % 3 {
                    0 => ElementaryTransform::Swap(i, j),
                    1 => ElementaryTransform::Scale(i, lam),
                    _ => ElementaryTransform::Transvection(i, j, lam),
                }
            };
            g = g.apply(t).unwrap();
        }
        prop_assert_eq!(rank(&g), rank(&form));
        prop_assert_eq!(canonicalize(&g).type_tag, canonicalize(&form).type_tag);
        prop_assert_eq!(count_zeros_closed(&g), count_zeros_closed(&form));
    }

    #[test]
    fn canonical_transform_is_invertible_and_exact(form in form_strategy(5)) {
        let f = form.field().clone();
        let c = canonicalize(&form);
        prop_assert!(c.transform.inverse(&f).is_ok());
        prop_assert_eq!(form.change_of_variables(&c.transform).unwrap(), c.shape(&f, form.n()));
        prop_assert_eq!(rank_oracle(&form), c.rank);
    }

    #[test]
    fn closed_count_matches_enumeration(form in form_strategy(4)) {
        prop_assert_eq!(count_zeros_closed(&form), count_zeros_oracle(&form).into());
    }

    #[test]
    fn pencil_counts_are_basis_independent(a in form_strategy(3), coeffs in prop::collection::vec(0u32..100, 6)) {
        let f = a.field().clone();
        let n = a.n();
        let mut b = QuadraticForm::zero(&f, n);
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                b.set_coeff(i, j, Elem(coeffs[k % 6] % f.q()));
                k += 1;
            }
        }
        let p = Pencil::new(vec![a, b]).unwrap();
        // [[1, 1], [0, 1]] is invertible over every field.
        let g = vec![vec![Elem(1), Elem(1)], vec![Elem(0), Elem(1)]];
        let p2 = p.change_pencil_basis(&g).unwrap();
        prop_assert_eq!(p.count_common_zeros_bruteforce(1 << 20).unwrap(), p2.count_common_zeros_bruteforce(1 << 20).unwrap());
        prop_assert_eq!(p.rank_spectrum(1 << 20).unwrap().vector_counts, p2.rank_spectrum(1 << 20).unwrap().vector_counts);
    }
}

#[test]
fn gaussian_binomials_count_subspaces() {
    // [n, k]_q · |GL_k| = number of ordered independent k-tuples.
    for q in [2u64, 3, 4] {
        for n in 1..=4usize {
            for k in 0..=n {
                let mut tuples: u128 = 1;
                for i in 0..k {
                    tuples *= (q as u128).pow(n as u32) - (q as u128).pow(i as u32);
                }
                let mut gl: u128 = 1;
                for i in 0..k {
                    gl *= (q as u128).pow(k as u32) - (q as u128).pow(i as u32);
                }
                assert_eq!(gaussian_binomial_u128(q, n, k) * gl, tuples);
            }
        }
    }
}
