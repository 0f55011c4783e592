use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

use toric_core::classify::{classify_linear_boundary, cones_equivalent, ContactToricClass};
use toric_core::families::{continued_fraction, eval_cf, generate_fillings, FamilyRequest};
use toric_core::forms::form_invariants;
use toric_core::lattice::{det2, rotate90, sl2_sending_to_e1, LatticeMat, LatticeVec, Sense};
use toric_core::moment::{
    cone_angle, edge_lengths, moment_cone, normal_chain, rays_eq1, rays_from_chain, recover_weights,
};
use toric_core::plumbing::{
    blow_down, blow_up, canonical_form, concavity_certificate, is_negative_definite, BlowUpSite,
    Concavity, PlumbingGraph,
};
use toric_core::{congruent_within_bound, Rational};

fn big(ws: &[i64]) -> Vec<BigInt> {
    ws.iter().map(|&w| BigInt::from(w)).collect()
}

fn weights(len: std::ops::RangeInclusive<usize>, lo: i64, hi: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(lo..=hi, len)
}

/// Weight lists with at least one nonnegative entry, other than `(0)`.
fn concave_weights(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<i64>> {
    weights(len, -5, 5)
        .prop_filter("needs some s_i >= 0", |w| w.iter().any(|&s| s >= 0))
        .prop_filter("(0) bounds a half-strip", |w| w[..] != [0])
}

fn vec2(r: i64) -> impl Strategy<Value = LatticeVec> {
    (-r..=r, -r..=r).prop_map(|(x, y)| LatticeVec::new(x, y))
}

fn interior_site(n: usize) -> impl Strategy<Value = BlowUpSite> {
    (1..n).prop_map(BlowUpSite::Interior)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn det2_is_multiplicative(a in -9i64..=9, b in -9i64..=9, c in -9i64..=9, d in -9i64..=9,
                              u in vec2(50), v in vec2(50)) {
        let m = LatticeMat::new(a, b, c, d);
        prop_assert_eq!(det2(&m.apply(&u), &m.apply(&v)), m.det() * det2(&u, &v));
    }

    #[test]
    fn rotations_cancel(v in vec2(1_000_000)) {
        prop_assert_eq!(rotate90(&rotate90(&v, Sense::Ccw), Sense::Cw), v.clone());
        prop_assert_eq!(rotate90(&rotate90(&v, Sense::Cw), Sense::Ccw), v);
    }

    #[test]
    fn sl2_normalises(v in vec2(1_000_000).prop_filter("primitive", |v| v.is_primitive())) {
        let u = sl2_sending_to_e1(&v).unwrap();
        prop_assert!(u.is_special());
        prop_assert_eq!(u.apply(&v), LatticeVec::e1());
    }

    #[test]
    fn rays_agree(w in weights(2..=10, -5, 5)) {
        let w = big(&w);
        let chain = normal_chain(&w).unwrap();
        prop_assert_eq!(rays_from_chain(&chain), rays_eq1(&w).unwrap());
        prop_assert_eq!(recover_weights(&chain), w);
        let ns = chain.normals();
        prop_assert!(ns.windows(2).all(|p| det2(&p[0], &p[1]).is_one()));
    }

    #[test]
    fn padding_adds_a_half_turn(w in concave_weights(1..=10)) {
        let w = big(&w);
        let chain = normal_chain(&w).unwrap();
        let mut padded = w.clone();
        padded.extend([BigInt::zero(), BigInt::zero()]);
        let pchain = normal_chain(&padded).unwrap();
        let (a, b) = (cone_angle(&chain).unwrap(), cone_angle(&pchain).unwrap());
        prop_assert_eq!(b.half_turns, a.half_turns + 1);
        prop_assert_eq!(b.exact, a.exact);
        prop_assert_eq!(pchain.last_collapse(), &-chain.last_collapse());

        let (c, d) = (classify_linear_boundary(&w).unwrap(), classify_linear_boundary(&padded).unwrap());
        match (c, d) {
            (ContactToricClass::NonFree { underlying: u, half_lutz: h },
             ContactToricClass::NonFree { underlying: v, half_lutz: k }) => {
                prop_assert_eq!(u, v);
                prop_assert_eq!(k, h + 1);
            }
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }

    #[test]
    fn concave_plumbings_have_certificates(w in concave_weights(1..=8)) {
        let g = PlumbingGraph::linear(w).unwrap();
        let q = g.intersection_form();
        match concavity_certificate(&q) {
            Concavity::Certified(c) => prop_assert!(c.verify(&q)),
            Concavity::Refuted { .. } => prop_assert!(false, "refuted {}", g),
        }
        prop_assert!(classify_linear_boundary(g.weights()).is_ok());
    }

    #[test]
    fn edge_lengths_close(w in concave_weights(1..=8)) {
        let chain = normal_chain(&big(&w)).unwrap();
        let img = edge_lengths(&chain).unwrap();
        prop_assert!(img.verify());
    }

    #[test]
    fn blow_down_undoes_blow_up(w in weights(1..=8, -3, 3), pick in any::<prop::sample::Index>(), cyclic in any::<bool>()) {
        let g = if cyclic && w.len() >= 3 {
            PlumbingGraph::cyclic(w).unwrap()
        } else {
            PlumbingGraph::linear(w).unwrap()
        };
        let sites = BlowUpSite::all(&g);
        let site = sites[pick.index(sites.len())];
        let up = blow_up(&g, site).unwrap();
        prop_assert_eq!(blow_down(&up, site.new_vertex_index(g.len())).unwrap(), g);
    }

    #[test]
    fn interior_blow_up_keeps_rays((w, site) in concave_weights(2..=8).prop_flat_map(|w| {
        let n = w.len();
        (Just(w), interior_site(n))
    })) {
        let g = PlumbingGraph::linear(w).unwrap();
        let up = blow_up(&g, site).unwrap();
        let (c0, c1) = (normal_chain(g.weights()).unwrap(), normal_chain(up.weights()).unwrap());
        let (m0, m1) = (moment_cone(&c0).unwrap(), moment_cone(&c1).unwrap());
        prop_assert_eq!(m0.angle, m1.angle);
        // the seeds ν_1, ν_2 survive only when the chop is past the first edge
        if site != BlowUpSite::Interior(1) {
            prop_assert_eq!(&m0, &m1);
        }
        prop_assert!(cones_equivalent(&m0, &m1));
        prop_assert_eq!(
            classify_linear_boundary(g.weights()).unwrap(),
            classify_linear_boundary(up.weights()).unwrap()
        );
    }

    #[test]
    fn end_blow_up_keeps_class(w in concave_weights(1..=8), left in any::<bool>()) {
        let g = PlumbingGraph::linear(w).unwrap();
        let site = if left { BlowUpSite::LeftEnd } else { BlowUpSite::RightEnd };
        let up = blow_up(&g, site).unwrap();
        let (m0, m1) = (
            moment_cone(&normal_chain(g.weights()).unwrap()).unwrap(),
            moment_cone(&normal_chain(up.weights()).unwrap()).unwrap(),
        );
        prop_assert!(cones_equivalent(&m0, &m1));
        prop_assert_eq!(
            classify_linear_boundary(g.weights()).unwrap(),
            classify_linear_boundary(up.weights()).unwrap()
        );
    }

    #[test]
    fn canonical_form_is_a_class_function(w in weights(3..=8, -4, 4), shift in 0usize..8, flip in any::<bool>()) {
        for cyclic in [false, true] {
            let g = if cyclic { PlumbingGraph::cyclic(w.clone()) } else { PlumbingGraph::linear(w.clone()) }.unwrap();
            let mut moved = w.clone();
            if cyclic {
                let s = shift % moved.len();
                moved.rotate_left(s);
            }
            if flip {
                moved.reverse();
            }
            let h = if cyclic { PlumbingGraph::cyclic(moved) } else { PlumbingGraph::linear(moved) }.unwrap();
            let c = canonical_form(&g);
            prop_assert_eq!(&c, &canonical_form(&h));
            let again = if cyclic { PlumbingGraph::cyclic(c.weights.clone()) } else { PlumbingGraph::linear(c.weights.clone()) }.unwrap();
            prop_assert_eq!(canonical_form(&again), c);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn invariants_survive_congruence(w in weights(1..=5, -5, 5), ops in prop::collection::vec((0usize..5, 0usize..5, -2i64..=2), 0..6)) {
        let q = PlumbingGraph::linear(w).unwrap().intersection_form();
        let n = q.dim();
        // P is a product of elementary row operations, hence unimodular
        let mut p: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from((i == j) as u8)).collect())
            .collect();
        for (i, j, c) in ops {
            let (i, j) = (i % n, j % n);
            if i == j {
                continue;
            }
            let row = p[j].clone();
            for (x, y) in p[i].iter_mut().zip(&row) {
                *x += y * BigInt::from(c);
            }
        }
        let moved = q.congruent_by(&p);
        prop_assert_eq!(form_invariants(&q), form_invariants(&moved));
    }
}

#[test]
fn negative_definite_has_no_certificate() {
    for n in 1..=5u32 {
        for code in 0..3u32.pow(n) {
            let w: Vec<i64> = (0..n).map(|i| -2 - ((code / 3u32.pow(i)) % 3) as i64).collect();
            let q = PlumbingGraph::linear(w).unwrap().intersection_form();
            assert!(is_negative_definite(&q));
            assert!(concavity_certificate(&q).certificate().is_none());
        }
    }
}

#[test]
fn zero_disk_bundle_is_not_concave() {
    let g = PlumbingGraph::linear([0]).unwrap();
    assert!(concavity_certificate(&g.intersection_form()).certificate().is_none());
    assert!(classify_linear_boundary(g.weights()).is_err());
    assert!(edge_lengths(&normal_chain(g.weights()).unwrap()).is_err());
}

#[test]
fn lens_round_trip() {
    for k in 1..=20i64 {
        for l in 1..k {
            if k.gcd(&l) != 1 {
                continue;
            }
            let cf = continued_fraction(&k.into(), &l.into()).unwrap();
            assert_eq!(
                classify_linear_boundary(&cf.coefficients).unwrap(),
                ContactToricClass::lens(k, l, 0).unwrap(),
                "{k}/{l}"
            );
        }
    }
}

#[test]
fn cone_equivalence_is_an_equivalence() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(50);
    let mut pool = Vec::new();
    while pool.len() < 50 {
        let n = rng.gen_range(1..=4);
        let w: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        if let Ok(c) = normal_chain(&big(&w)).and_then(|c| moment_cone(&c)) {
            pool.push(c);
        }
    }
    for a in &pool {
        assert!(cones_equivalent(a, a));
        for b in &pool {
            assert_eq!(cones_equivalent(a, b), cones_equivalent(b, a));
            for c in &pool {
                if cones_equivalent(a, b) && cones_equivalent(b, c) {
                    assert!(cones_equivalent(a, c));
                }
            }
        }
    }
}

/// `s_1 - 1 / (s_2 - ...)` as a reduced `(num, den)` with `den > 0`.
fn nest(coeffs: &[i64]) -> Option<(i128, i128)> {
    let (&last, rest) = coeffs.split_last()?;
    let (mut p, mut q) = (last as i128, 1i128);
    for &s in rest.iter().rev() {
        if p == 0 {
            return None;
        }
        // s - q/p
        let (np, nq) = (s as i128 * p - q, p);
        (p, q) = (np, nq);
    }
    let g = p.gcd(&q);
    let (p, q) = (p / g, q / g);
    Some(if q < 0 { (-p, -q) } else { (p, q) })
}

#[test]
fn greedy_fraction_is_the_only_one() {
    // every list with s_1 in [0, 12], tail in [-12, -2], up to 6 entries
    let mut found: std::collections::HashMap<(i128, i128), Vec<Vec<i64>>> = Default::default();
    let mut stack: Vec<Vec<i64>> = (0..=12).map(|s| vec![s]).collect();
    while let Some(list) = stack.pop() {
        if let Some((k, l)) = nest(&list) {
            if (1..=12).contains(&k) {
                found.entry((k, l)).or_default().push(list.clone());
            }
        }
        if list.len() < 6 {
            for s in -12..=-2 {
                let mut next = list.clone();
                next.push(s);
                stack.push(next);
            }
        }
    }
    let mut checked = 0;
    for k in 1..=12i64 {
        for l in 1..=60i64 {
            if k.gcd(&l) != 1 {
                continue;
            }
            let greedy = continued_fraction(&k.into(), &l.into()).unwrap();
            let in_range = greedy.coefficients.len() <= 6
                && greedy.coefficients[0] <= 12.into()
                && greedy.coefficients[1..].iter().all(|s| *s >= (-12).into());
            let lists = found.get(&(k as i128, l as i128)).cloned().unwrap_or_default();
            if in_range {
                assert_eq!(lists.len(), 1, "{k}/{l}: {lists:?}");
                assert_eq!(big(&lists[0]), greedy.coefficients);
                checked += 1;
            } else {
                assert!(lists.is_empty(), "{k}/{l}: {lists:?}");
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn families_are_distinct_and_certified() {
    let targets = [
        ContactToricClass::s1xs2(0),
        ContactToricClass::s1xs2(1),
        ContactToricClass::lens(5, 2, 0).unwrap(),
        ContactToricClass::lens(7, 3, 2).unwrap(),
        ContactToricClass::torus(1),
        ContactToricClass::torus(3),
    ];
    for t in targets {
        let fam = generate_fillings(&FamilyRequest::new(t.clone(), 8)).unwrap();
        for m in &fam {
            assert!(m.certificate.verify(&m.graph.intersection_form()));
            assert_eq!(m.class, t);
        }
        let mut forms: Vec<_> = fam.iter().map(|m| m.canonical.clone()).collect();
        forms.sort();
        forms.dedup();
        assert_eq!(forms.len(), fam.len());
    }
}

#[test]
fn lens_families_are_toric_minimal() {
    for k in 2..=9i64 {
        for l in 1..k {
            if k.gcd(&l) != 1 {
                continue;
            }
            let fam = generate_fillings(&FamilyRequest::new(ContactToricClass::lens(k, l, 0).unwrap(), 6)).unwrap();
            assert!(fam.iter().all(|m| m.toric_minimal));
        }
    }
}

#[test]
fn case1_forms_are_degenerate() {
    for n in 0..=50i64 {
        let inv = form_invariants(&PlumbingGraph::linear([n, 0, -n]).unwrap().intersection_form());
        assert!(inv.determinant.is_zero());
        assert_eq!(inv.rank, 2);
    }
    let q = |n: i64| PlumbingGraph::linear([n, 0, -n]).unwrap().intersection_form();
    assert_eq!(congruent_within_bound(&q(0), &q(1), 2), Ok(None));
    assert_eq!(congruent_within_bound(&q(2), &q(3), 2), Ok(None));
}

#[test]
fn cf_values_reproduce() {
    for k in 1..=30i64 {
        for l in 1..=30i64 {
            if k.gcd(&l) != 1 {
                continue;
            }
            let cf = continued_fraction(&k.into(), &l.into()).unwrap();
            assert!(cf.coefficients[0] >= BigInt::zero());
            assert!(cf.coefficients[1..].iter().all(|s| *s <= BigInt::from(-2)));
            assert_eq!(eval_cf(&cf.coefficients).unwrap(), Rational::new(k.into(), l.into()));
        }
    }
}
