use super::sample::{random_elem, random_unit, rng_for};
use super::{c_elem, expand_relator, h_elem, pi_eval, w_elem, RelatorInstance, Schema};
use crate::exactfield::{FieldCtx, FieldElem};
use crate::words::{Root, Word};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Debug, Default, Serialize, PartialEq)]
pub struct SoundnessOutcome {
    pub samples: usize,
    pub checks: usize,
    pub rejected_zero_units: usize,
    pub failures: Vec<String>,
}

fn run_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

fn soundness_sample(seed: u64, i: usize) -> (usize, usize, Vec<String>) {
    let ctx = FieldCtx::new(&["u"]);
    let u = ctx.var("u");
    let mut rng = rng_for(seed, i as u64);
    let s = random_elem(&mut rng, &u);
    let t = random_elem(&mut rng, &u);
    let (p, r1) = random_unit(&mut rng, &u);
    let (q, r2) = random_unit(&mut rng, &u);
    let mut checks = 0;
    let mut failures = Vec::new();
    for alpha in [Root::Pos, Root::Neg] {
        for r in [
            RelatorInstance::new(Schema::R1, alpha, s.clone(), t.clone()),
            RelatorInstance::new(Schema::R2, alpha, p.clone(), t.clone()),
            RelatorInstance::new(Schema::R3, alpha, p.clone(), s.clone()),
            RelatorInstance::new(Schema::R4, alpha, p.clone(), q.clone()),
        ] {
            checks += 1;
            let ok = expand_relator(&r).and_then(|w| pi_eval(&w)).map(|m| m.is_identity()).unwrap_or(false);
            if !ok {
                failures.push(format!("sample {}: {}", i, r));
            }
        }
    }
    (checks, r1 + r2, failures)
}

/// π(expand(r)) = I for every schema and both roots over seeded draws.
pub fn relator_soundness(samples: usize, seed: u64, jobs: usize) -> SoundnessOutcome {
    let parts: Vec<_> = run_pool(jobs, || (0..samples).into_par_iter().map(|i| soundness_sample(seed, i)).collect());
    let mut out = SoundnessOutcome { samples, ..Default::default() };
    for (c, r, f) in parts {
        out.checks += c;
        out.rejected_zero_units += r;
        out.failures.extend(f);
    }
    out
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CandidateMatch {
    pub candidate: String,
    pub matches_all_samples: bool,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq)]
pub struct Prop53Outcome {
    pub samples: usize,
    pub checks: usize,
    pub failures: Vec<String>,
    /// Right-hand sides tried for w_α(u)w_{−α}(v)w_α(u)⁻¹.
    pub item4_candidates: Vec<CandidateMatch>,
    pub item4_resolution: Option<String>,
}

type Candidate = (&'static str, fn(Root, &FieldElem, &FieldElem) -> Word);

fn item4_candidates() -> Vec<Candidate> {
    fn uuv(u: &FieldElem, v: &FieldElem) -> FieldElem {
        &(u * u) * v
    }
    vec![
        ("w_a(-u^2*v)", |a, u, v| w_elem(a, &uuv(u, v).neg()).unwrap()),
        ("w_a(u^2*v)", |a, u, v| w_elem(a, &uuv(u, v)).unwrap()),
        ("w_-a(-u^2*v)", |a, u, v| w_elem(-a, &uuv(u, v).neg()).unwrap()),
        ("w_-a(u^2*v)", |a, u, v| w_elem(-a, &uuv(u, v)).unwrap()),
        ("w_-a(u^-2*v^-1)", |a, u, v| w_elem(-a, &uuv(u, v).inv().unwrap()).unwrap()),
        ("w_a(-u^-2*v)", |a, u, v| w_elem(a, &(&u.pow(-2).unwrap() * v).neg()).unwrap()),
    ]
}

fn prop53_sample(seed: u64, i: usize) -> (usize, Vec<String>, Vec<bool>) {
    let ctx = FieldCtx::new(&["u"]);
    let var = ctx.var("u");
    let mut rng = rng_for(seed, i as u64);
    let (u, _) = random_unit(&mut rng, &var);
    let (v, _) = random_unit(&mut rng, &var);
    let t = random_elem(&mut rng, &var);
    let mut checks = 0;
    let mut failures = Vec::new();
    let mut check = |label: &str, ok: bool| {
        checks += 1;
        if !ok {
            failures.push(format!("sample {}: {}", i, label));
        }
    };
    let pi = |w: &Word| pi_eval(w).unwrap();
    let mut cand = vec![true; item4_candidates().len()];
    for a in [Root::Pos, Root::Neg] {
        let w = pi(&w_elem(a, &u).unwrap());
        check("(1) w(u) = w(-u)^-1", w == pi(&w_elem(a, &u.neg()).unwrap()).inv());
        check("(1) w(u) = w_-a(-1/u)", w == pi(&w_elem(-a, &u.inv().unwrap().neg()).unwrap()));
        let h = h_elem(a, &u).unwrap();
        let lhs = pi(&h.conj(&Word::x(a, t.clone())));
        check("(2) h x(t) h^-1 = x(u^2 t)", lhs == pi(&Word::x(a, &(&u * &u) * &t)));
        check("(3) h_a(u) = h_-a(u)^-1", pi(&h) == pi(&h_elem(-a, &u).unwrap()).inv());
        check("(5) c(u,v) = 1", pi(&c_elem(a, &u, &v).unwrap()).is_identity());
        let l4 = pi(&w_elem(a, &u).unwrap().conj(&w_elem(-a, &v).unwrap()));
        for (k, (_, f)) in item4_candidates().iter().enumerate() {
            cand[k] &= l4 == pi(&f(a, &u, &v));
        }
    }
    (checks, failures, cand)
}

/// The π-level consequences of the standard St₂ identities over seeded draws.
pub fn prop53_suite(samples: usize, seed: u64, jobs: usize) -> Prop53Outcome {
    let parts: Vec<_> = run_pool(jobs, || (0..samples).into_par_iter().map(|i| prop53_sample(seed, i)).collect());
    let names = item4_candidates();
    let mut all = vec![samples > 0; names.len()];
    let mut out = Prop53Outcome { samples, ..Default::default() };
    for (c, f, m) in parts {
        out.checks += c;
        out.failures.extend(f);
        for (k, b) in m.into_iter().enumerate() {
            all[k] &= b;
        }
    }
    out.item4_candidates = names
        .iter()
        .zip(&all)
        .map(|((n, _), &b)| CandidateMatch { candidate: n.to_string(), matches_all_samples: b })
        .collect();
    out.item4_resolution = out.item4_candidates.iter().find(|c| c.matches_all_samples).map(|c| c.candidate.clone());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass_and_are_deterministic() {
        let a = relator_soundness(8, 7, 2);
        assert!(a.failures.is_empty(), "{:?}", a.failures);
        assert_eq!(a.checks, 64);
        assert_eq!(a, relator_soundness(8, 7, 1));
        let p = prop53_suite(6, 3, 2);
        assert!(p.failures.is_empty(), "{:?}", p.failures);
        assert_eq!(p.item4_resolution.as_deref(), Some("w_a(-u^2*v)"));
    }
}
