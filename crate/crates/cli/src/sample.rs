//! Seeded batch sampling of the parameter space with stratum statistics.

use curvesy_core::biproj::cp_configuration;
use curvesy_core::singloc::analyze;
use curvesy_core::syzygy::{is_balanced, is_true_triple, ParamTriple};
use rand::Rng;
use rand::SeedableRng;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

pub struct SampleOutcome {
    pub drawn: usize,
    pub true_count: usize,
    pub cp_counts: BTreeMap<String, usize>,
    pub quartic_counts: BTreeMap<String, usize>,
    pub qcp_counts: BTreeMap<String, usize>,
    pub bqp_counts: BTreeMap<String, usize>,
}

/// Draw `count` random triples with coefficients in [-9, 9], keep the true
/// ones, and classify each.  Seed-driven and bit-reproducible.
pub fn run_sample(count: usize, d: usize, seed: u64) -> Result<SampleOutcome, String> {
    if d < 2 || d % 2 != 0 {
        return Err(format!(
            "sampling classifies multiplicity-c configurations, which need an even degree >= 2 (got {})",
            d
        ));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = SampleOutcome {
        drawn: count,
        true_count: 0,
        cp_counts: BTreeMap::new(),
        quartic_counts: BTreeMap::new(),
        qcp_counts: BTreeMap::new(),
        bqp_counts: BTreeMap::new(),
    };
    for _ in 0..count {
        let mut cs = vec![vec![0i64; d + 1]; 3];
        for c in cs.iter_mut() {
            for v in c.iter_mut() {
                *v = rng.gen_range(-9..=9);
            }
        }
        let g = ParamTriple::from_int_coeffs(d, &cs[0], &cs[1], &cs[2]);
        if !is_true_triple(&g).map_err(|e| e.to_string())? {
            continue;
        }
        out.true_count += 1;
        let balanced = is_balanced(&g).map_err(|e| e.to_string())?.0;
        let cp_label = if balanced {
            let (label, _) = cp_configuration(&g).map_err(|e| e.to_string())?;
            label.as_str().to_string()
        } else {
            "unbalanced".to_string()
        };
        *out.cp_counts.entry(cp_label).or_insert(0) += 1;
        if d == 4 {
            let rep = analyze(&g).map_err(|e| e.to_string())?;
            let q = rep.quartic.as_ref().expect("quartic classification present");
            *out.quartic_counts.entry(q.configuration.clone()).or_insert(0) += 1;
            *out.qcp_counts.entry(q.qcp.clone()).or_insert(0) += 1;
            if let Some(b) = &q.bqp {
                *out.bqp_counts.entry(b.clone()).or_insert(0) += 1;
            }
        }
    }
    Ok(out)
}

pub fn sample_to_json(s: &SampleOutcome, d: usize, seed: u64) -> Value {
    let table = |m: &BTreeMap<String, usize>| -> Value {
        let mut o = Map::new();
        for (k, v) in m {
            o.insert(k.clone(), json!(v));
        }
        Value::Object(o)
    };
    let mut m = Map::new();
    m.insert("degree".into(), json!(d));
    m.insert("seed".into(), json!(seed));
    m.insert("drawn".into(), json!(s.drawn));
    m.insert("true_triples".into(), json!(s.true_count));
    m.insert("cp".into(), table(&s.cp_counts));
    if d == 4 {
        m.insert("quartic_configurations".into(), table(&s.quartic_counts));
        m.insert("qcp".into(), table(&s.qcp_counts));
        m.insert("bqp".into(), table(&s.bqp_counts));
    }
    Value::Object(m)
}

pub fn sample_to_pretty(s: &SampleOutcome, d: usize, seed: u64) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "degree {} seed {}: {} drawn, {} true triples\n",
        d, seed, s.drawn, s.true_count
    ));
    let block = |title: &str, m: &BTreeMap<String, usize>, out: &mut String| {
        if m.is_empty() {
            return;
        }
        out.push_str(title);
        out.push('\n');
        for (k, v) in m {
            out.push_str(&format!("  {:<28} {}\n", k, v));
        }
    };
    block("multiplicity-c configurations:", &s.cp_counts, &mut out);
    block("quartic configurations:", &s.quartic_counts, &mut out);
    block("qcp strata:", &s.qcp_counts, &mut out);
    block("bqp strata:", &s.bqp_counts, &mut out);
    out
}
