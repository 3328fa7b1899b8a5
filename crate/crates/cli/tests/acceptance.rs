//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible with --nocapture; the test harness result mirrors it).
//!
//! Run with `cargo test --release --test acceptance -- --nocapture` for the
//! stated runtime budgets.

use curvesy_core::algebra::field::FieldNode;
use curvesy_core::algebra::linalg;
use curvesy_core::algebra::rat::Rat;
use curvesy_core::binforms::{bf_gcd, BinForm};
use curvesy_core::biproj::{self, ECPLabel};
use curvesy_core::blowup::InfNode;
use curvesy_core::oracle;
use curvesy_core::singloc;
use curvesy_core::syzygy::{self, HBMatrix, ParamTriple};
use num_traits::Zero;
use std::process::Command;
use std::sync::OnceLock;

fn bf(deg: usize, coeffs: &[i64]) -> BinForm {
    BinForm::from_int_coeffs(FieldNode::Base, deg, coeffs)
}

fn hb(c: usize, rows: [[&BinForm; 2]; 3]) -> HBMatrix {
    HBMatrix::new(
        [
            [rows[0][0].clone(), rows[0][1].clone()],
            [rows[1][0].clone(), rows[1][1].clone()],
            [rows[2][0].clone(), rows[2][1].clone()],
        ],
        (c, c),
    )
}

fn triple_of(phi: &HBMatrix) -> ParamTriple {
    let m = phi.signed_minors();
    ParamTriple::new(m[0].clone(), m[1].clone(), m[2].clone()).unwrap()
}

fn pass(n: usize, name: &str) {
    println!("ACCEPTANCE {} ({}): PASS", n, name);
}

// -------------------------------------------------------------------------
// criterion 1: the thirteen quartic configurations
// -------------------------------------------------------------------------

/// The canonical fixtures: (configuration, matrix, conductor exponent
/// multiset from the chart).
fn quartic_fixtures() -> Vec<(&'static str, ParamTriple, Vec<usize>)> {
    let z = BinForm::zero(FieldNode::Base, 2);
    let zl = BinForm::zero(FieldNode::Base, 1);
    let shape_a = |q1: &BinForm, q2: &BinForm, q3: &BinForm| {
        triple_of(&hb(2, [[q1, q1], [q2, &z], [&z, q3]]))
    };
    let shape_b = |q1: &BinForm, q2: &BinForm, q3: &BinForm| {
        triple_of(&hb(2, [[q1, &z], [q2, q3], [&z, q2]]))
    };
    let shape_c = |q1: &BinForm, q2: &BinForm, q3: &BinForm| {
        triple_of(&hb(2, [[q1, q2], [q3, q1], [&z, q3]]))
    };
    let shape_d = |l1: &BinForm, l2: &BinForm, c1: &BinForm, c2: &BinForm, c3: &BinForm| {
        let zc = BinForm::zero(FieldNode::Base, 3);
        let _ = &zc;
        let phi = HBMatrix::new(
            [
                [l1.clone(), c1.clone()],
                [l2.clone(), c2.clone()],
                [zl.clone(), c3.clone()],
            ],
            (1, 3),
        );
        triple_of(&phi)
    };
    // quadrics
    let xy = bf(2, &[0, 1, 0]);
    let x2my2 = bf(2, &[-1, 0, 1]);
    let two_more = bf(2, &[6, 5, 1]); // (x+2y)(x+3y)
    let sq_x2y = bf(2, &[4, 4, 1]); // (x+2y)^2
    let sq_xy = bf(2, &[1, 2, 1]); // (x+y)^2
    let x2 = bf(2, &[0, 0, 1]);
    let y2 = bf(2, &[1, 0, 0]);
    let yxpy = bf(2, &[1, 1, 0]); // y(x+y)
    let x2py2 = bf(2, &[1, 0, 1]);
    // linear and cubic pieces
    let lx = bf(1, &[0, 1]);
    let ly = bf(1, &[1, 0]);
    let c_my3 = bf(3, &[-1, 0, 0, 0]);
    let c_x3 = bf(3, &[0, 0, 0, 1]);
    let c_xyxpy = bf(3, &[0, 1, 1, 0]); // xy(x+y)
    let c_x2y = bf(3, &[0, 0, 1, 0]);
    vec![
        ("(2:1,1)^3", shape_a(&xy, &x2my2, &two_more), vec![1, 1, 1, 1, 1, 1]),
        ("(2:1,1)^2,(2:1)", shape_a(&xy, &x2my2, &sq_x2y), vec![2, 1, 1, 1, 1]),
        ("(2:1,1),(2:1)^2", shape_a(&xy, &sq_xy, &sq_x2y), vec![2, 2, 1, 1]),
        ("(2:1)^3", shape_a(&x2, &y2, &sq_xy), vec![2, 2, 2]),
        (
            "(2:2:1,1),(2:1,1)",
            shape_b(&xy, &x2my2, &x2),
            vec![2, 2, 1, 1],
        ),
        ("(2:2:1,1),(2:1)", shape_b(&x2, &yxpy, &x2py2), vec![2, 2, 2]),
        ("(2:2:1),(2:1,1)", shape_b(&xy, &sq_xy, &x2), vec![4, 1, 1]),
        ("(2:2:1),(2:1)", shape_b(&x2, &sq_xy, &y2), vec![4, 2]),
        ("(2:2:2:1,1)", shape_c(&x2py2, &x2, &xy), vec![3, 3]),
        ("(2:2:2:1)", shape_c(&x2, &xy, &y2), vec![6]),
        (
            "(3:1,1,1)",
            shape_d(&lx, &ly, &c_my3, &c_x3, &c_xyxpy),
            vec![2, 2, 2],
        ),
        ("(3:1,1)", shape_d(&lx, &ly, &c_my3, &c_x3, &c_x2y), vec![4, 2]),
        (
            "(3:1)",
            ParamTriple::from_int_coeffs(
                4,
                &[0, 0, 0, 0, 1],
                &[0, 0, 0, 1, 0],
                &[1, 0, 0, 0, 0],
            ),
            vec![6],
        ),
    ]
}

fn run_cli(args: &[&str]) -> (String, String, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_curvesy"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code(),
    )
}

#[test]
fn acceptance_1_quartic_canonical_corpus() {
    for (expect, g, chart) in quartic_fixtures() {
        let t0 = std::time::Instant::now();
        // the = syntax keeps clap from reading a leading minus as a flag
        let args_owned: Vec<String> = vec![
            "quartic".into(),
            format!("--g1={}", g.g[0].to_text()),
            format!("--g2={}", g.g[1].to_text()),
            format!("--g3={}", g.g[2].to_text()),
        ];
        let args: Vec<&str> = args_owned.iter().map(|s| s.as_str()).collect();
        let (stdout, stderr, code) = run_cli(&args);
        assert_eq!(code, Some(0), "fixture {} failed: {}", expect, stderr);
        let v: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
        assert_eq!(
            v["configuration"].as_str().unwrap(),
            expect,
            "configuration mismatch for {}",
            expect
        );
        // conductor exponent multiset against the chart row
        let rep = singloc::analyze(&g).unwrap();
        let mut shape: Vec<usize> = Vec::new();
        for (f, e) in &rep.conductor.factors {
            for _ in 0..f.deg() {
                shape.push(*e);
            }
        }
        shape.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(shape, chart, "conductor shape mismatch for {}", expect);
        let dt = t0.elapsed();
        assert!(dt.as_secs_f64() < 5.0, "fixture {} took {:?}", expect, dt);
    }
    pass(1, "quartic canonical corpus: 13 labels and conductor shapes");
}

// -------------------------------------------------------------------------
// criterion 2: the eleven-orbit chart
// -------------------------------------------------------------------------

/// First pool form of degree c satisfying a predicate, scanning small
/// integer coefficient vectors deterministically.
fn first_form(c: usize, pred: impl Fn(&BinForm) -> bool) -> BinForm {
    let n = c + 1;
    let mut counter = vec![0i64; n];
    loop {
        // increment base-3 counter over {0,1,2}
        let mut i = 0;
        loop {
            counter[i] += 1;
            if counter[i] <= 2 {
                break;
            }
            counter[i] = 0;
            i += 1;
            assert!(i < n, "candidate pool exhausted");
        }
        let f = bf(c, &counter);
        if f.is_zero() {
            continue;
        }
        if pred(&f) {
            return f;
        }
    }
}

fn independent(forms: &[&BinForm], cand: &BinForm) -> bool {
    let c = cand.deg();
    let mut m: Vec<Vec<Rat>> = forms
        .iter()
        .map(|f| (0..=c).map(|k| f.coeff(k).as_rat().unwrap().clone()).collect())
        .collect();
    m.push((0..=c).map(|k| cand.coeff(k).as_rat().unwrap().clone()).collect());
    linalg::rank(&m) == forms.len() + 1
}

fn coprime(a: &BinForm, b: &BinForm) -> bool {
    bf_gcd(a, b).unwrap().deg() == 0
}

fn height_two(phi: &HBMatrix) -> bool {
    let m = phi.signed_minors();
    if m.iter().all(|f| f.is_zero()) {
        return false;
    }
    let mut g: Option<BinForm> = None;
    for f in m.iter() {
        if f.is_zero() {
            continue;
        }
        g = Some(match g {
            None => f.clone(),
            Some(h) => bf_gcd(&h, f).unwrap(),
        });
    }
    g.map(|h| h.deg() == 0).unwrap_or(false)
}

/// Instantiate each orbit at the smallest degree where it exists (the form
/// space of degree c has dimension c + 1, so the mu5 labels need c = 4 and
/// mu6 needs c = 5).
fn orbit_fixture(label: ECPLabel) -> HBMatrix {
    let build = |c: usize, mk: &dyn Fn(&[BinForm]) -> HBMatrix, picks: &[&dyn Fn(&[BinForm]) -> BinForm]| {
        let mut qs: Vec<BinForm> = vec![
            bf(c, &{
                let mut v = vec![0i64; c + 1];
                v[c] = 1;
                v
            }), // x^c
            {
                // y^{c-1}(x + y)
                let mut v = vec![0i64; c + 1];
                v[0] = 1;
                v[1] = 1;
                bf(c, &v)
            },
        ];
        for p in picks {
            let q = p(&qs);
            qs.push(q);
        }
        let phi = mk(&qs);
        assert!(height_two(&phi), "fixture for {:?} lost height two", label);
        phi
    };
    let z2 = |c: usize| BinForm::zero(FieldNode::Base, c);
    match label {
        ECPLabel::Mu2 => {
            let q1 = bf(3, &[0, 0, 0, 1]);
            let q2 = bf(3, &[1, 0, 0, 0]);
            let z = z2(3);
            hb(3, [[&q1, &z], [&q2, &q1], [&z, &q2]])
        }
        ECPLabel::CcolCcolC => build(
            3,
            &|q: &[BinForm]| {
                let z = z2(3);
                hb(3, [[&q[0], &q[1]], [&q[2], &q[0]], [&z, &q[2]]])
            },
            &[&|q: &[BinForm]| {
                first_form(3, |f| {
                    independent(&[&q[0], &q[1]], f) && coprime(f, &q[0].mul(&q[1]))
                })
            }],
        ),
        ECPLabel::CcolCC => build(
            3,
            &|q: &[BinForm]| {
                let z = z2(3);
                hb(3, [[&q[0], &z], [&q[2], &q[1]], [&z, &q[2]]])
            },
            &[&|q: &[BinForm]| {
                first_form(3, |f| {
                    independent(&[&q[0], &q[1]], f) && coprime(f, &q[0].mul(&q[1]))
                })
            }],
        ),
        ECPLabel::CCC => build(
            3,
            &|q: &[BinForm]| {
                let z = z2(3);
                hb(3, [[&q[0], &q[0]], [&q[1], &z], [&z, &q[2]]])
            },
            &[&|q: &[BinForm]| {
                first_form(3, |f| {
                    independent(&[&q[0], &q[1]], f) && coprime(f, &q[0].mul(&q[1]))
                })
            }],
        ),
        ECPLabel::CcolC => build(
            3,
            &|q: &[BinForm]| {
                let z = z2(3);
                hb(3, [[&q[0], &q[1]], [&q[2], &q[3]], [&z, &q[2]]])
            },
            &[
                &|q: &[BinForm]| {
                    first_form(3, |f| independent(&[&q[0], &q[1]], f) && coprime(f, &q[0]))
                },
                &|q: &[BinForm]| {
                    first_form(3, |f| {
                        independent(&[&q[0], &q[1], &q[2]], f) && coprime(f, &q[2])
                    })
                },
            ],
        ),
        ECPLabel::CC => build(
            3,
            &|q: &[BinForm]| {
                let z = z2(3);
                hb(3, [[&q[0], &q[1]], [&q[2], &q[2]], [&z, &q[3]]])
            },
            &[
                &|q: &[BinForm]| {
                    first_form(3, |f| independent(&[&q[0], &q[1]], f) && coprime(f, &q[0]))
                },
                &|q: &[BinForm]| {
                    first_form(3, |f| {
                        independent(&[&q[0], &q[1], &q[2]], f)
                            && coprime(f, &q[2].mul(&q[0].sub(&q[1])))
                    })
                },
            ],
        ),
        ECPLabel::CMu4 => build(
            3,
            &|q: &[BinForm]| {
                let z = z2(3);
                hb(3, [[&q[0], &q[1]], [&q[2], &q[0]], [&z, &q[3]]])
            },
            &[
                &|q: &[BinForm]| {
                    first_form(3, |f| independent(&[&q[0], &q[1]], f) && coprime(f, &q[0]))
                },
                &|q: &[BinForm]| {
                    first_form(3, |f| {
                        independent(&[&q[0], &q[1], &q[2]], f)
                            && coprime(f, &q[0].mul(&q[0]).sub(&q[1].mul(&q[2])))
                    })
                },
            ],
        ),
        ECPLabel::CMu5 => build(
            4,
            &|q: &[BinForm]| {
                let z = z2(4);
                hb(4, [[&q[0], &q[1]], [&q[2], &q[3]], [&z, &q[4]]])
            },
            &[
                &|q: &[BinForm]| {
                    first_form(4, |f| independent(&[&q[0], &q[1]], f) && coprime(f, &q[0]))
                },
                &|q: &[BinForm]| {
                    first_form(4, |f| {
                        independent(&[&q[0], &q[1], &q[2]], f)
                            && coprime(f, &q[0].mul(&q[2]))
                    })
                },
                &|q: &[BinForm]| {
                    first_form(4, |f| {
                        independent(&[&q[0], &q[1], &q[2], &q[3]], f)
                            && coprime(
                                f,
                                &q[0].mul(&q[0].mul(&q[3]).sub(&q[1].mul(&q[2]))),
                            )
                    })
                },
            ],
        ),
        ECPLabel::EmptyMu4 => {
            // [[y x^2, x^3], [x^3, y^3], [y^3, y^2 (x+y)]]
            let yx2 = bf(3, &[0, 0, 1, 0]);
            let x3 = bf(3, &[0, 0, 0, 1]);
            let y3 = bf(3, &[1, 0, 0, 0]);
            let y2xpy = bf(3, &[1, 1, 0, 0]);
            hb(3, [[&yx2, &x3], [&x3, &y3], [&y3, &y2xpy]])
        }
        ECPLabel::EmptyMu5 => {
            // [[x^4, y^2 (x^2 + y^2)], [y^4, y x^3], [y^3 (x+y), x^4]]
            let x4 = bf(4, &[0, 0, 0, 0, 1]);
            let y2x2y2 = bf(4, &[1, 0, 1, 0, 0]);
            let y4 = bf(4, &[1, 0, 0, 0, 0]);
            let yx3 = bf(4, &[0, 0, 0, 1, 0]);
            let y3xpy = bf(4, &[1, 1, 0, 0, 0]);
            hb(4, [[&x4, &y2x2y2], [&y4, &yx3], [&y3xpy, &x4]])
        }
        ECPLabel::EmptyMu6 => {
            // [[x^3 (x^2+y^2), y^3 (x^2+y^2)], [y^5, y x^4], [y^4 (x+y), x^5]]
            let a = bf(5, &[0, 0, 0, 1, 0, 1]);
            let b = bf(5, &[1, 0, 1, 0, 0, 0]);
            let y5 = bf(5, &[1, 0, 0, 0, 0, 0]);
            let yx4 = bf(5, &[0, 0, 0, 0, 1, 0]);
            let y4xpy = bf(5, &[1, 1, 0, 0, 0, 0]);
            let x5 = bf(5, &[0, 0, 0, 0, 0, 1]);
            hb(5, [[&a, &b], [&y5, &yx4], [&y4xpy, &x5]])
        }
    }
}

#[test]
fn acceptance_2_orbit_chart() {
    // expected chart rows: (mu1, mu2C, exponent shape); None = zero gcd
    let rows: Vec<(ECPLabel, usize, usize, Option<Vec<usize>>)> = vec![
        (ECPLabel::EmptyMu6, 6, 6, Some(vec![])),
        (ECPLabel::EmptyMu5, 5, 6, Some(vec![])),
        (ECPLabel::CMu5, 5, 5, Some(vec![1])),
        (ECPLabel::EmptyMu4, 4, 6, Some(vec![])),
        (ECPLabel::CMu4, 4, 5, Some(vec![1])),
        (ECPLabel::CC, 4, 4, Some(vec![1, 1])),
        (ECPLabel::CcolC, 4, 4, Some(vec![2])),
        (ECPLabel::CCC, 3, 3, Some(vec![1, 1, 1])),
        (ECPLabel::CcolCC, 3, 3, Some(vec![2, 1])),
        (ECPLabel::CcolCcolC, 3, 3, Some(vec![3])),
        (ECPLabel::Mu2, 2, 1, None),
    ];
    for (label, mu1, mu2c, shape) in rows {
        let t0 = std::time::Instant::now();
        let phi = orbit_fixture(label);
        let inv = biproj::chart_invariants(&phi).unwrap();
        assert_eq!(inv.mu1, mu1, "mu(I1) for {}", label);
        assert_eq!(inv.mu2c, mu2c, "mu(I2(C)) for {}", label);
        assert_eq!(inv.gcd_shape, shape, "gcd shape for {}", label);
        assert_eq!(
            biproj::ecp_from_invariants(&inv).unwrap(),
            label,
            "chart classification for {}",
            label
        );
        // the constructive reduction lands in the canonical set with the
        // same label
        let red = biproj::orbit::orbit_reduce(&phi).unwrap();
        assert_eq!(red.label, label, "orbit reduction label for {}", label);
        assert!(
            biproj::orbit::matches_canonical(&red.matrix, label),
            "canonical membership for {}",
            label
        );
        let dt = t0.elapsed();
        assert!(dt.as_secs_f64() < 10.0, "label {} took {:?}", label, dt);
    }
    pass(2, "eleven-orbit invariant chart at minimal degrees");
}

// -------------------------------------------------------------------------
// criterion 3: the determinant identity
// -------------------------------------------------------------------------

#[test]
fn acceptance_3_determinant_identity() {
    let t0 = std::time::Instant::now();
    assert!(syzygy::generic::zz_identity_symbolic(1), "symbolic identity at c = 1");
    assert!(syzygy::generic::zz_identity_symbolic(2), "symbolic identity at c = 2");
    use rand::Rng;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xACC3);
    for c in [3usize, 4] {
        let d = 2 * c;
        let mut done = 0;
        while done < 100 {
            let lambda: Vec<[i64; 3]> = (0..=d)
                .map(|_| {
                    [
                        rng.gen_range(-9..=9),
                        rng.gen_range(-9..=9),
                        rng.gen_range(-9..=9),
                    ]
                })
                .collect();
            match syzygy::generic::zz_identity_specialized(c, &lambda) {
                Some(ok) => {
                    assert!(ok, "identity failed at c = {} on {:?}", c, lambda);
                    done += 1;
                }
                None => continue, // w = 0: redraw
            }
        }
    }
    let dt = t0.elapsed();
    assert!(dt.as_secs_f64() < 120.0, "identity checks took {:?}", dt);
    pass(3, "determinant identity: symbolic c <= 2, specialized c = 3, 4");
}

// -------------------------------------------------------------------------
// criteria 4 and 5 share their samples
// -------------------------------------------------------------------------

fn shared_samples(d: usize) -> &'static Vec<ParamTriple> {
    static QUARTICS: OnceLock<Vec<ParamTriple>> = OnceLock::new();
    static SEXTICS: OnceLock<Vec<ParamTriple>> = OnceLock::new();
    match d {
        4 => QUARTICS.get_or_init(|| syzygy::sample_true_triples(4, 200, 0xACC4)),
        6 => SEXTICS.get_or_init(|| syzygy::sample_true_triples(6, 200, 0xACC6)),
        _ => unreachable!(),
    }
}

#[test]
fn acceptance_4_hilbert_burch_round_trip() {
    let t0 = std::time::Instant::now();
    for d in [4usize, 6] {
        let c = d / 2;
        for g in shared_samples(d) {
            let phi = syzygy::hb_kernel(g).unwrap();
            let minors = phi.signed_minors();
            for j in 0..3 {
                assert!(minors[j].eq_form(&g.g[j]), "kernel minors differ from the triple");
            }
            let (bal, w) = syzygy::is_balanced(g).unwrap();
            if !bal {
                assert!(w.is_zero());
                continue;
            }
            let phi2 = syzygy::generic::hb_generic_balanced(g).unwrap();
            let minors2 = phi2.signed_minors();
            for j in 0..3 {
                assert!(minors2[j].eq_form(&g.g[j]), "generic minors differ from the triple");
            }
            // equal column spans of the degree-c syzygy space
            let vecize = |f: &BinForm| -> Vec<Rat> {
                (0..=c).map(|k| f.coeff(k).as_rat().unwrap().clone()).collect()
            };
            let mut rows: Vec<Vec<Rat>> = Vec::new();
            for m in [&phi, &phi2] {
                for k in 0..2 {
                    let mut v = Vec::new();
                    for i in 0..3 {
                        v.extend(vecize(&m.entries[i][k]));
                    }
                    rows.push(v);
                }
            }
            assert_eq!(linalg::rank(&rows), 2, "column spans disagree");
        }
    }
    let dt = t0.elapsed();
    assert!(dt.as_secs_f64() < 180.0, "round trips took {:?}", dt);
    pass(4, "Hilbert-Burch round trip on 200 + 200 samples");
}

#[test]
fn acceptance_5_invariant_budget_suite() {
    let t0 = std::time::Instant::now();
    for d in [4usize, 6] {
        for g in shared_samples(d) {
            let rep = singloc::analyze(g).unwrap();
            assert_eq!(
                rep.conductor.c_g.deg(),
                (d - 1) * (d - 2),
                "conductor degree"
            );
            let total: i64 = rep.points.iter().map(|p| p.conjugacy as i64 * p.delta).sum();
            assert_eq!(total, ((d - 1) * (d - 2) / 2) as i64, "delta budget");
            let jac_expect: usize = rep.points.iter().map(|p| p.conjugacy * (p.m - p.s)).sum();
            assert_eq!(rep.jacobian_gcd.deg(), jac_expect, "jacobian degree");
            // every jacobian root divides the conductor form
            if rep.jacobian_gcd.deg() > 0 {
                let q = rep.conductor.c_g.clone();
                let j = &rep.jacobian_gcd;
                let g1 = bf_gcd(j, &q).unwrap();
                let distinct = |f: &BinForm| -> usize {
                    curvesy_core::binforms::bf_squarefree(f)
                        .unwrap()
                        .iter()
                        .map(|(p, _)| p.deg())
                        .sum()
                };
                assert_eq!(distinct(j), distinct(&g1), "jacobian root escapes c_g");
            }
            if rep.balanced {
                let inv = biproj::chart_invariants(&rep.phi).unwrap();
                assert!(!inv.gcd.is_zero());
                if inv.gcd.deg() == 0 {
                    assert_eq!(inv.mu2c, 6);
                } else {
                    assert_eq!(inv.gcd.deg(), 6 - inv.mu2c, "gcd I3(A) vs mu(I2(C))");
                }
            }
        }
    }
    let dt = t0.elapsed();
    assert!(dt.as_secs_f64() < 300.0, "invariant budget suite took {:?}", dt);
    pass(5, "invariant budgets on the shared samples");
}

// -------------------------------------------------------------------------
// criterion 6: oracle equivalence
// -------------------------------------------------------------------------

#[test]
fn acceptance_6_oracle_equivalence() {
    let t0 = std::time::Instant::now();
    let samples = syzygy::sample_true_triples(4, 50, 0xACC5);
    for g in &samples {
        let rep = singloc::analyze(g).unwrap();
        let oracle = oracle::cross_validate(g, &rep.phi, &rep.points).unwrap();
        assert!(oracle.vanishes, "implicit equation must vanish on the triple");
        assert!(oracle.degree_ok, "degree-4 irreducible equation expected");
        assert!(oracle.multiplicities_ok, "oracle multiplicities disagree");
        assert_eq!(
            oracle.point_count_ok,
            Some(true),
            "direct singular-point count disagrees: {:?}",
            oracle.details
        );
    }
    let dt = t0.elapsed();
    assert!(dt.as_secs_f64() < 300.0, "oracle runs took {:?}", dt);
    pass(6, "oracle equivalence on 50 random true quartics");
}

// -------------------------------------------------------------------------
// criterion 7: negative controls and exit codes
// -------------------------------------------------------------------------

#[test]
fn acceptance_7_negative_controls() {
    // non-birational control with the implicit conic
    let (stdout, _, code) = run_cli(&[
        "analyze",
        "--g1",
        "x^4",
        "--g2",
        "x^2*y^2",
        "--g3",
        "y^4",
    ]);
    assert_eq!(code, Some(1));
    let v: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(v["r"], 2);
    assert_eq!(v["e"], 2);
    assert_eq!(v["base_point_free"], true);
    let g = ParamTriple::from_int_coeffs(
        4,
        &[0, 0, 0, 0, 1],
        &[0, 0, 1, 0, 0],
        &[1, 0, 0, 0, 0],
    );
    let phi = syzygy::hb_kernel(&g).unwrap();
    let curve = oracle::implicitize(&g, &phi).unwrap();
    assert_eq!((curve.degree, curve.r), (2, 2));
    // T1 T3 - T2^2 normalized
    let mut want = curvesy_core::algebra::tripoly::TriPoly::zero();
    want.insert([1, 0, 1], Rat::from_integer(1.into()));
    want.insert([0, 2, 0], Rat::from_integer((-1).into()));
    assert!(curve.f.eq_poly(&want), "implicit conic mismatch: {}", curve.f);
    // base-point control
    let (_, _, code) = run_cli(&[
        "analyze",
        "--g1",
        "x^4",
        "--g2",
        "x^3*y",
        "--g3",
        "x^2*y^2",
    ]);
    assert_eq!(code, Some(1));
    // success path exits zero
    let (_, _, code) = run_cli(&["analyze", "--g1", "x^4", "--g2", "x^3*y", "--g3", "y^4"]);
    assert_eq!(code, Some(0));
    // parse errors are user errors
    let (_, _, code) = run_cli(&["analyze", "--g1", "x^2 +", "--g2", "x*y", "--g3", "y^2"]);
    assert_eq!(code, Some(1));
    pass(7, "negative controls and exit codes");
}

// -------------------------------------------------------------------------
// criterion 8: blow-up chains
// -------------------------------------------------------------------------

#[test]
fn acceptance_8_blowup_chains() {
    // oscnode fixture: one multiplicity-2 point in the first neighborhood
    // and one in the second
    let x2py2 = bf(2, &[1, 0, 1]);
    let x2 = bf(2, &[0, 0, 1]);
    let xy = bf(2, &[0, 1, 0]);
    let z = BinForm::zero(FieldNode::Base, 2);
    let osc = triple_of(&hb(2, [[&x2py2, &x2], [&xy, &x2py2], [&z, &xy]]));
    let rep = singloc::analyze(&osc).unwrap();
    assert_eq!(rep.points.len(), 1);
    let p = &rep.points[0];
    let tree = p.inf_tree.as_ref().unwrap();
    assert_eq!(tree.len(), 1, "one first-neighborhood point");
    assert_eq!(tree[0].multiplicity, 2);
    assert_eq!(tree[0].children.len(), 1, "one second-neighborhood point");
    assert_eq!(tree[0].children[0].multiplicity, 2);
    assert!(tree[0].children[0].children.is_empty());
    assert_eq!(p.multiplicity_sequence().as_deref(), Some("2:2:2:1,1"));
    // the first-neighborhood bound on every fixture
    for (name, g, _) in quartic_fixtures() {
        let rep = singloc::analyze(&g).unwrap();
        let d1 = rep.phi.col_degs.0;
        for p in &rep.points {
            if let Some(tree) = &p.inf_tree {
                assert_first_level_bound(tree, d1, name);
            }
        }
    }
    pass(8, "blow-up chains and the first-neighborhood bound");
}

fn assert_first_level_bound(tree: &[InfNode], d1: usize, name: &str) {
    for n in tree {
        assert!(
            n.multiplicity <= d1,
            "fixture {}: neighborhood multiplicity {} exceeds d1 = {}",
            name,
            n.multiplicity,
            d1
        );
    }
}
