//! Randomized invariant suites for the arithmetic and matrix layers.

use curvesy_core::algebra::factorq::factor_over_q;
use curvesy_core::algebra::field::{with_splitting, FElem, FieldNode};
use curvesy_core::algebra::rat::Rat;
use curvesy_core::algebra::upoly::{upoly_gcd, UniPoly};
use curvesy_core::binforms::{bf_factor_q, bf_gcd, bf_resultant, bf_squarefree, BinForm};
use curvesy_core::biproj;
use curvesy_core::blowup;
use curvesy_core::singloc;
use curvesy_core::syzygy::{self, ParamTriple};
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;

fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

fn random_poly(rng: &mut impl Rng, max_deg: usize) -> UniPoly {
    let d = rng.gen_range(0..=max_deg);
    loop {
        let coeffs: Vec<i64> = (0..=d).map(|_| rng.gen_range(-9..=9)).collect();
        let p = UniPoly::from_int_coeffs(FieldNode::Base, &coeffs);
        if !p.is_zero() {
            return p;
        }
    }
}

#[test]
fn gcd_absorbs_common_factors() {
    let mut r = rng(101);
    for _ in 0..60 {
        let f = random_poly(&mut r, 6);
        let g = random_poly(&mut r, 6);
        let h = random_poly(&mut r, 4);
        if h.degree().unwrap_or(0) == 0 {
            continue;
        }
        let gcd = upoly_gcd(&f.mul(&h), &g.mul(&h)).unwrap();
        // h divides the gcd: exact division with zero remainder
        let hm = h.monic().unwrap();
        let (_, rem) = gcd.divrem(&hm).unwrap();
        assert!(rem.is_zero(), "common factor not absorbed");
    }
}

#[test]
fn squarefree_reconstructs_500_inputs() {
    let mut r = rng(102);
    for _ in 0..500 {
        let f = random_poly(&mut r, 8);
        if f.degree().unwrap_or(0) == 0 {
            continue;
        }
        // bias toward interesting inputs: square a factor sometimes
        let f = if r.gen_bool(0.5) {
            let g = random_poly(&mut r, 3);
            if g.is_zero() {
                f
            } else {
                f.mul(&g).mul(&g)
            }
        } else {
            f
        };
        let dec = f.squarefree_decomposition().unwrap();
        let mut prod = UniPoly::constant(FieldNode::Base, f.leading());
        for (g, m) in &dec {
            assert!(g.leading().is_one());
            for _ in 0..*m {
                prod = prod.mul(g);
            }
        }
        assert!(prod.eq_poly(&f), "reconstruction failed");
        // multiplicities strictly increasing
        for w in dec.windows(2) {
            assert!(w[0].1 < w[1].1);
        }
    }
}

#[test]
fn factorization_fixed_point_and_coprimality() {
    let mut r = rng(103);
    for _ in 0..40 {
        let f = random_poly(&mut r, 6).mul(&random_poly(&mut r, 4));
        if f.degree().unwrap_or(0) == 0 {
            continue;
        }
        let facs = factor_over_q(&f);
        for (i, (a, _)) in facs.iter().enumerate() {
            // irreducibility as a fixed point of factorization
            let sub = factor_over_q(a);
            assert_eq!(sub.len(), 1);
            assert!(sub[0].0.eq_poly(a));
            assert_eq!(sub[0].1, 1);
            for (b, _) in facs.iter().skip(i + 1) {
                if a.eq_poly(b) {
                    continue;
                }
                let g = upoly_gcd(a, b).unwrap();
                assert_eq!(g.degree(), Some(0), "factors not coprime");
            }
        }
    }
}

/// CRT combination of branch results equals the computation over each
/// irreducible factor separately.
#[test]
fn dynamic_evaluation_matches_per_factor_runs() {
    let mut r = rng(104);
    // squarefree reducible moduli built from distinct irreducibles
    let moduli: Vec<Vec<Vec<i64>>> = vec![
        vec![vec![-2, 0, 1], vec![-3, 0, 1]],          // (t^2-2)(t^2-3)
        vec![vec![-1, 1], vec![1, 0, 1]],              // (t-1)(t^2+1)
        vec![vec![-1, 1], vec![1, 1], vec![-2, 0, 1]], // (t-1)(t+1)(t^2-2)
    ];
    for parts in &moduli {
        let irr: Vec<UniPoly> = parts
            .iter()
            .map(|c| UniPoly::from_int_coeffs(FieldNode::Base, c))
            .collect();
        let modulus = irr.iter().fold(UniPoly::one(FieldNode::Base), |a, b| a.mul(b));
        let node = FieldNode::Base.extend(&modulus, "t").unwrap();
        for _ in 0..6 {
            // random f, g over the node, degree <= 4, with a planted
            // common factor to make gcds nontrivial sometimes
            let mut rand_over = |d: usize| -> UniPoly {
                let coeffs: Vec<FElem> = (0..=d)
                    .map(|_| {
                        let c0 = r.gen_range(-4..=4);
                        let c1 = r.gen_range(-2..=2);
                        node.generator()
                            .mul_rat(&Rat::from_integer(c1.into()))
                            .add(&FElem::from_int(c0))
                    })
                    .collect();
                UniPoly::from_coeffs(node.clone(), coeffs)
            };
            let h = rand_over(2);
            let f = rand_over(2).mul(&h);
            let g = rand_over(2).mul(&h);
            if f.is_zero() || g.is_zero() {
                continue;
            }
            let branches = with_splitting(&node, &mut |n| {
                let fa = f.transport(n);
                let ga = g.transport(n);
                fa.gcd(&ga)
            });
            // compare against the run over each irreducible factor
            for p in &irr {
                let leaf = FieldNode::Base.extend(p, "t").unwrap();
                let direct = f.transport(&leaf).gcd(&g.transport(&leaf)).unwrap();
                // find the branch whose modulus is divisible by p
                let mut matched = false;
                for (bn, bg) in &branches {
                    let FieldNode::Ext(desc) = bn else { panic!() };
                    let (_, rem) = desc.modulus.divrem(&p.monic().unwrap()).unwrap();
                    if rem.is_zero() {
                        let moved = bg.transport(&leaf);
                        assert!(
                            moved.eq_poly(&direct),
                            "dynamic evaluation disagrees with the direct run"
                        );
                        matched = true;
                        break;
                    }
                }
                assert!(matched, "no branch covers the factor");
            }
        }
    }
}

fn random_form(rng: &mut impl Rng, deg: usize) -> BinForm {
    BinForm::random(FieldNode::Base, deg, rng)
}

#[test]
fn dehomogenization_roundtrip_500_forms() {
    let mut r = rng(105);
    for _ in 0..500 {
        let d = r.gen_range(1..=8);
        let mut f = random_form(&mut r, d);
        if r.gen_bool(0.3) {
            // plant a power of y
            f = f.mul_y_power(r.gen_range(1..=2));
        }
        let yv = f.y_valuation();
        let p = f.dehom();
        assert_eq!(p.degree().unwrap() + yv, f.deg());
        let back = BinForm::homogenize(&p, f.deg() - yv).mul_y_power(yv);
        assert!(back.eq_form(&f));
    }
}

#[test]
fn resultant_vanishes_exactly_on_common_roots_500_pairs() {
    let mut r = rng(106);
    for _ in 0..500 {
        let df = r.gen_range(1..=4);
        let dg = r.gen_range(1..=4);
        let mut f = random_form(&mut r, df);
        let mut g = random_form(&mut r, dg);
        if r.gen_bool(0.4) {
            // plant a shared root
            let l = random_form(&mut r, 1);
            f = f.mul(&l);
            g = g.mul(&l);
        }
        if f.deg() > 8 || g.deg() > 8 {
            continue;
        }
        let res = bf_resultant(&f, &g).unwrap();
        let gcd = bf_gcd(&f, &g).unwrap();
        assert_eq!(
            res.is_zero(),
            gcd.deg() >= 1,
            "resultant/gcd disagreement"
        );
    }
}

#[test]
fn squarefree_root_count_matches_rational_factorization() {
    let mut r = rng(107);
    for _ in 0..100 {
        let f = random_form(&mut r, 3).mul(&random_form(&mut r, 3));
        let sq_count: usize = bf_squarefree(&f)
            .unwrap()
            .iter()
            .map(|(g, _)| g.deg())
            .sum();
        let fac_count: usize = bf_factor_q(&f).iter().map(|(g, _)| g.deg()).sum();
        assert_eq!(sq_count, fac_count, "distinct root counts differ");
    }
}

#[test]
fn hb_roundtrip_and_balance_on_samples() {
    for d in [4usize, 6] {
        for g in syzygy::sample_true_triples(d, 12, 601 + d as u64) {
            let phi = syzygy::hb_kernel(&g).unwrap();
            assert_eq!(phi.col_degs.0 + phi.col_degs.1, d);
            let minors = phi.signed_minors();
            for j in 0..3 {
                assert!(minors[j].eq_form(&g.g[j]));
            }
            // height two: the minor gcd is constant
            let mut h = minors[0].clone();
            for m in &minors[1..] {
                h = bf_gcd(&h, m).unwrap();
            }
            assert_eq!(h.deg(), 0);
            let (bal, _) = syzygy::is_balanced(&g).unwrap();
            assert_eq!(bal, phi.col_degs == (d / 2, d / 2));
            if bal {
                let phi2 = syzygy::generic::hb_generic_balanced(&g).unwrap();
                let minors2 = phi2.signed_minors();
                for j in 0..3 {
                    assert!(minors2[j].eq_form(&g.g[j]));
                }
            }
        }
    }
}

#[test]
fn tba_identity_on_balanced_samples() {
    for g in syzygy::sample_true_triples(4, 25, 610) {
        let (bal, _) = syzygy::is_balanced(&g).unwrap();
        if !bal {
            continue;
        }
        let phi = syzygy::hb_kernel(&g).unwrap();
        let inv = biproj::chart_invariants(&phi).unwrap();
        assert!(!inv.gcd.is_zero(), "gcd I3(A) vanished on a true triple");
        assert!(inv.gcd.deg() <= 3);
        if inv.gcd.deg() == 0 {
            assert_eq!(inv.mu2c, 6);
        } else {
            assert_eq!(inv.gcd.deg(), 6 - inv.mu2c);
        }
    }
}

#[test]
fn cp_configuration_invariant_under_row_operations() {
    let mut r = rng(108);
    let quartics = syzygy::sample_true_triples(4, 8, 611);
    for g in &quartics {
        let (label, points) = biproj::cp_configuration(g).unwrap();
        for _ in 0..2 {
            // random invertible chi acting on the triple
            let chi: Vec<Vec<Rat>> = loop {
                let m: Vec<Vec<Rat>> = (0..3)
                    .map(|_| {
                        (0..3)
                            .map(|_| Rat::from_integer(r.gen_range(-4..=4).into()))
                            .collect()
                    })
                    .collect();
                if !curvesy_core::algebra::linalg::det_rational(&m).is_zero() {
                    break m;
                }
            };
            // g' = g * chi^{-1} (so that points transform by p -> p chi^{-1})
            let inv = curvesy_core::algebra::linalg::inverse(&chi).unwrap();
            let mut gs: Vec<BinForm> = Vec::new();
            for j in 0..3 {
                let mut acc = BinForm::zero(FieldNode::Base, 4);
                for (i, gi) in g.g.iter().enumerate() {
                    acc = acc.add(&gi.scale(&FElem::Rat(inv[i][j].clone())));
                }
                gs.push(acc);
            }
            let g2 = ParamTriple::new(gs[0].clone(), gs[1].clone(), gs[2].clone()).unwrap();
            let (label2, points2) = biproj::cp_configuration(&g2).unwrap();
            assert_eq!(label, label2, "label drifted under row operations");
            let mut sizes: Vec<(usize, usize)> = points
                .iter()
                .map(|p| (p.conjugacy, p.infinitely_near))
                .collect();
            let mut sizes2: Vec<(usize, usize)> = points2
                .iter()
                .map(|p| (p.conjugacy, p.infinitely_near))
                .collect();
            sizes.sort_unstable();
            sizes2.sort_unstable();
            assert_eq!(sizes, sizes2);
        }
    }
}

#[test]
fn blowup_counts_match_gcd_exponents_on_balanced_quartics() {
    // the number of infinitely-near multiplicity-c points from the blow-up
    // recursion equals the sum of (exponent - 1) over the gcd I3(A) roots
    let mut checked = 0usize;
    let mut seed = 620u64;
    while checked < 100 {
        seed += 1;
        let samples = syzygy::sample_true_triples(4, 10, seed);
        for g in samples {
            let (bal, _) = syzygy::is_balanced(&g).unwrap();
            if !bal {
                continue;
            }
            let rep = singloc::analyze(&g).unwrap();
            let Some((_, mc_points)) = &rep.multc else { continue };
            let from_gcd: usize = mc_points
                .iter()
                .map(|p| p.conjugacy * p.infinitely_near)
                .sum();
            let c = g.d / 2;
            let mut from_blowup = 0usize;
            for p in &rep.points {
                if p.m != c {
                    continue;
                }
                if let Some(tree) = &p.inf_tree {
                    from_blowup += p.conjugacy * count_mult_c(tree, c);
                }
            }
            assert_eq!(from_gcd, from_blowup, "infinitely-near counts disagree");
            checked += 1;
            if checked >= 100 {
                break;
            }
        }
    }
}

fn count_mult_c(tree: &[blowup::InfNode], c: usize) -> usize {
    tree.iter()
        .map(|n| {
            let own = if n.multiplicity == c { n.conjugacy } else { 0 };
            own + n.conjugacy * count_mult_c(&n.children, c)
        })
        .sum()
}

#[test]
fn neighborhood_membership_matches_span_condition() {
    // a multiplicity-c point has a multiplicity-c point in its first
    // neighborhood iff the bottom-right entry lies in the span of the
    // first column's top entries
    for g in syzygy::sample_true_triples(4, 20, 630) {
        let (bal, _) = syzygy::is_balanced(&g).unwrap();
        if !bal {
            continue;
        }
        let rep = singloc::analyze(&g).unwrap();
        let c = 2usize;
        for p in &rep.points {
            if p.m != c || !p.node.is_base() {
                continue;
            }
            let phi = &rep.phi;
            let n = blowup::normalize_at_point(phi, &p.point).unwrap();
            let pts = blowup::first_neighborhood(&n).unwrap();
            let has_c = pts.iter().any(|q| q.multiplicity == c);
            // span test: coefficients of q3 against p1, p2
            let dim = |forms: &[&BinForm]| -> usize {
                let m: Vec<Vec<FElem>> = forms
                    .iter()
                    .map(|f| (0..=c).map(|k| f.coeff(k)).collect())
                    .collect();
                curvesy_core::algebra::linalg::fe_rank(&m).unwrap()
            };
            let with_q3 = dim(&[&n.p1, &n.p2, &n.q3]);
            let without = dim(&[&n.p1, &n.p2]);
            assert_eq!(has_c, with_q3 == without, "span criterion mismatch");
        }
    }
}

#[test]
fn jacobian_divides_conductor_and_fiber_partition() {
    for d in [4usize, 6] {
        for g in syzygy::sample_true_triples(d, 6, 640 + d as u64) {
            let rep = singloc::analyze(&g).unwrap();
            // every root of the jacobian gcd is a root of c_g
            let j = &rep.jacobian_gcd;
            if j.deg() > 0 {
                let g1 = bf_gcd(j, &rep.conductor.c_g).unwrap();
                let jsq: usize = bf_squarefree(j)
                    .unwrap()
                    .iter()
                    .map(|(f, _)| f.deg())
                    .sum();
                let shared: usize = bf_squarefree(&g1)
                    .unwrap()
                    .iter()
                    .map(|(f, _)| f.deg())
                    .sum();
                assert_eq!(jsq, shared, "a jacobian root escapes the conductor");
            }
            // fiber partition: conjugacy * fiber size sums to the number of
            // distinct conductor roots
            let total: usize = rep.points.iter().map(|p| p.conjugacy * p.s).sum();
            let distinct: usize = rep
                .conductor
                .factors
                .iter()
                .map(|(f, _)| f.deg())
                .sum();
            assert_eq!(total, distinct);
            // one-branch fibers carry even exponents (t = 2 delta)
            for p in &rep.points {
                if p.s == 1 {
                    assert_eq!(p.t_exponents.len(), 1);
                    assert_eq!(p.t_exponents[0] as i64, 2 * p.delta);
                }
            }
        }
    }
}

#[test]
fn balanced_locus_is_detected_by_w() {
    // w != 0 iff the kernel construction produces balanced degrees
    let mut r = rng(650);
    for _ in 0..30 {
        let coeffs: Vec<Vec<i64>> = (0..3)
            .map(|_| (0..5).map(|_| r.gen_range(-5..=5)).collect())
            .collect();
        let g = ParamTriple::from_int_coeffs(4, &coeffs[0], &coeffs[1], &coeffs[2]);
        if !syzygy::base_point_free(&g) {
            continue;
        }
        let (bal, w) = syzygy::is_balanced(&g).unwrap();
        assert_eq!(bal, !w.is_zero());
        let phi = syzygy::hb_kernel(&g).unwrap();
        assert_eq!(bal, phi.col_degs == (2, 2));
    }
}
