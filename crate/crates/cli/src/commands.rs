use crate::report::{sha256, Report, Tag};
use crate::Cmd;
use num_rational::BigRational;
use ocl_core::alexander::{
    alexander_polynomial, check_membership, genus2_obstruction, ocmt_check, parse_laurent, parse_matrix, Boundary,
    LaurentPoly, Membership, ModulePresentation,
};
use ocl_core::certificates::{
    from_json, ghys_refined, psi_transport, search_commutator_cert, surface_datum, t2_bound, to_json, torus_knot,
    translation_pair, verify_commutator_product, verify_relator_product, Certificate, CertificateDoc,
    CommutatorProduct, PsiCerts, Presentation, TranslationMode, Verdict,
};
use ocl_core::exactfield::{parse_field_auto, FieldCtx, Vars};
use ocl_core::steinberg::{prop53_suite, relator_soundness, verify_ghys};
use ocl_core::words::{parse_word, parse_word_auto, word_vars, Root, Word};
use std::fmt::Display;
use std::path::Path;
use std::sync::Arc;

pub struct Opts {
    pub seed: u64,
    pub jobs: usize,
}

/// Any error here is a usage, input or IO problem (exit 2).
pub type CmdResult = Result<(Report, bool), String>;

fn err<E: Display>(e: E) -> String {
    e.to_string()
}

fn read(p: &Path) -> Result<String, String> {
    std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {}", p.display(), e))
}

fn write(p: &Path, s: &str) -> Result<(), String> {
    std::fs::write(p, s).map_err(|e| format!("cannot write {}: {}", p.display(), e))
}

fn root(alpha: i64) -> Result<Root, String> {
    Root::from_sign(alpha).ok_or_else(|| format!("alpha must be 1 or -1, got {}", alpha))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Writes a certificate and checks that the file verifies as written.
fn emit(p: &Path, presentation: &Presentation, vars: Vars, c: &CommutatorProduct) -> Result<(), String> {
    let doc = CertificateDoc { presentation: presentation.clone(), vars, certificate: Certificate::Commutator(c.clone()) };
    let s = to_json(&doc).map_err(err)?;
    let back = from_json(&s).map_err(err)?;
    let Certificate::Commutator(b) = back.certificate else { return Err("round trip changed the kind".into()) };
    if !verify_commutator_product(&back.presentation, &b).map_err(err)?.ok {
        return Err("emitted certificate does not re-verify".into());
    }
    write(p, &s)
}

pub fn run(cmd: &Cmd, o: &Opts) -> CmdResult {
    match cmd {
        Cmd::Verify { path } => verify(path),
        Cmd::Ghys { alpha, refined, axiom, cert_out } => ghys(*alpha, *refined, axiom.as_deref(), cert_out.as_deref()),
        Cmd::SteinbergCheck { samples } => steinberg_check(*samples, o),
        Cmd::Alexander { matrix, u, boundary } => alexander(matrix, u, boundary.as_deref()),
        Cmd::TorusKnot { p, q, cert_out, relator_out } => torus(*p, *q, cert_out.as_deref(), relator_out.as_deref()),
        Cmd::Psi { a, alpha, constructive, cert_out } => psi(a, *alpha, *constructive, cert_out.as_deref()),
        Cmd::Search { target, presentation, max_cost, max_len, budget, cert_out } => {
            search(target.as_deref(), presentation, *max_cost, *max_len, *budget, cert_out.as_deref())
        }
    }
}

pub fn verify(path: &Path) -> CmdResult {
    let text = read(path)?;
    let doc = from_json(&text).map_err(err)?;
    let mut rep = Report::new("verify");
    rep.input("path", path.display().to_string()).input("file_sha256", sha256(&text));
    let (kind, verdict) = match &doc.certificate {
        Certificate::Relator(p) => ("relator-product", verify_relator_product(&doc.presentation, p)),
        Certificate::Commutator(p) => ("commutator-product", verify_commutator_product(&doc.presentation, p)),
    };
    // rejected relators and signs count as failed verification, not as malformed input
    let v = verdict.unwrap_or_else(|e| Verdict {
        ok: false,
        residual: doc.certificate.target().clone(),
        cost: 0,
        failure: Some(e.to_string()),
        imported_cost: 0,
    });
    let tag = if v.imported_cost > 0 { Tag::AxiomImport } else { Tag::VerifiedCertificate };
    rep.result("kind", kind)
        .result("presentation", doc.presentation.name())
        .result("target", doc.certificate.target().to_string())
        .result("ok", v.ok)
        .result("residual", v.residual.to_string())
        .result("failure", &v.failure);
    if v.ok {
        rep.number("cost", v.cost, tag).number("imported_cost", v.imported_cost, Tag::AxiomImport);
        rep.line(format!("{} over {}: verified, cost {}", kind, doc.presentation.name(), v.cost));
        if v.imported_cost > 0 {
            rep.line(format!("  imported blocks contribute {}", v.imported_cost));
        }
    } else {
        rep.line(format!("{} over {}: FAILED", kind, doc.presentation.name()));
        rep.line(format!("  {}", v.failure.as_deref().unwrap_or("")));
        rep.line(format!("  residual {}", v.residual));
    }
    Ok((rep, v.ok))
}

pub fn ghys(alpha: i64, refined: bool, axiom: Option<&str>, cert_out: Option<&Path>) -> CmdResult {
    let a = root(alpha)?;
    let mode = match axiom {
        None => TranslationMode::Constructive,
        Some("translations-xi2") => TranslationMode::Axiom,
        Some(other) => return Err(format!("unknown axiom `{}`", other)),
    };
    if cert_out.is_some() && !refined {
        return Err("--cert-out needs --refined".into());
    }
    let mut rep = Report::new("ghys");
    rep.input("alpha", alpha).input("refined", refined).input("axiom", axiom);
    let g = verify_ghys(a).map_err(err)?;
    let b = t2_bound(g.relator_count, 1);
    let mut ok = g.pi_equal && g.relator_count == 12;
    rep.result("pi_equal", g.pi_equal)
        .result("free_equal", g.free_equal)
        .result("residual", &g.residual)
        .number("relator_count", g.relator_count, Tag::PaperScript)
        .number("cl", 1, Tag::PaperScript)
        .number("t2_bound", b.t2_bound, Tag::PaperScript)
        .number("t2_genus_bound", b.genus_bound, Tag::PaperScript);
    rep.line(format!("alpha {}: pi_equal {}, free_equal {}", alpha, yes(g.pi_equal), yes(g.free_equal)));
    if !g.free_equal {
        rep.line(format!("  residual {}", g.residual));
    }
    rep.line(format!(
        "relators {}, ocl <= 5*{} + 2*1 = {}, genus <= {}",
        g.relator_count,
        g.relator_count,
        b.t2_bound.unwrap_or(0),
        b.genus_bound.unwrap_or(0)
    ));
    if refined {
        let r = ghys_refined(a, mode).map_err(err)?;
        let checks_ok = r.identity_checks.iter().all(|c| c.free_ok != Some(false) && c.pi_ok != Some(false));
        ok &= r.verified && checks_ok;
        let tag = if r.imported_cost > 0 { Tag::AxiomImport } else { Tag::VerifiedCertificate };
        rep.result("refined_mode", &r.mode)
            .result("ledger", &r.ledger)
            .result("identity_checks", &r.identity_checks)
            .result("refined_verified", r.verified)
            .number("pre_fold_cost", r.pre_fold_cost, tag)
            .number("ocl_bound", r.total_cost, tag)
            .number("genus_bound", r.total_cost + 1, tag)
            .number("imported_cost", r.imported_cost, Tag::AxiomImport);
        rep.line(format!("refined ({}): verified {}", r.mode, yes(r.verified)));
        for e in &r.ledger {
            let imp = if e.imported > 0 { format!(" ({} imported)", e.imported) } else { String::new() };
            rep.line(format!("  {:<48} {:>3}{}", e.step, e.cost, imp));
        }
        rep.line(format!(
            "  commutators before fold {}, ocl <= {}, genus <= {}",
            r.pre_fold_cost,
            r.total_cost,
            r.total_cost + 1
        ));
        if r.imported_cost > 0 {
            rep.line(format!("  {} of the cost comes from imported translation blocks", r.imported_cost));
        }
        if let Some(p) = cert_out {
            emit(p, &Presentation::Steinberg, Arc::new(vec!["u".into()]), &r.certificate)?;
        }
    }
    Ok((rep, ok))
}

pub fn steinberg_check(samples: usize, o: &Opts) -> CmdResult {
    if samples == 0 {
        return Err("--samples must be at least 1".into());
    }
    let mut rep = Report::new("steinberg-check");
    rep.input("samples", samples).input("seed", o.seed);
    let s = relator_soundness(samples, o.seed, o.jobs);
    let p = prop53_suite(samples, o.seed, o.jobs);
    let ok = s.failures.is_empty() && p.failures.is_empty() && p.item4_resolution.is_some();
    rep.result("soundness", &s).result("identities", &p);
    rep.number("soundness_checks", s.checks, Tag::PaperScript)
        .number("identity_checks", p.checks, Tag::PaperScript)
        .number("rejected_zero_units", s.rejected_zero_units, Tag::PaperScript);
    rep.line(format!(
        "relator schemas: {} checks over {} samples, {} failures ({} zero draws resampled)",
        s.checks,
        samples,
        s.failures.len(),
        s.rejected_zero_units
    ));
    rep.line(format!("identities: {} checks, {} failures", p.checks, p.failures.len()));
    match &p.item4_resolution {
        Some(r) => rep.line(format!("conjugate of w_-a(v) by w_a(u) matches {}", r)),
        None => rep.line("conjugate of w_-a(v) by w_a(u): no candidate matches"),
    };
    for f in s.failures.iter().chain(&p.failures).take(10) {
        rep.line(format!("  {}", f));
    }
    Ok((rep, ok))
}

fn vec_str(v: &[LaurentPoly]) -> String {
    let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", s.join(", "))
}

fn parse_boundary(text: &str, rows: usize) -> Result<Boundary, String> {
    let (mut m, mut l) = (None, None);
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, rest) = line.split_once(':').ok_or_else(|| format!("boundary line without `m:`/`l:`: {}", line))?;
        let v = rest.split(',').map(|e| parse_laurent(e.trim())).collect::<Result<Vec<_>, _>>().map_err(err)?;
        if v.len() != rows {
            return Err(format!("dimension mismatch: boundary vector of length {} for {} generators", v.len(), rows));
        }
        match k.trim() {
            "m" => m = Some(v),
            "l" => l = Some(v),
            other => return Err(format!("unknown boundary class `{}`", other)),
        }
    }
    match (m, l) {
        (Some(m), Some(l)) => Ok(Boundary { m, l }),
        _ => Err("boundary file needs both `m:` and `l:`".into()),
    }
}

fn membership_json(target: &[LaurentPoly], pres: &ModulePresentation, scale: &LaurentPoly, m: &Membership) -> Result<serde_json::Value, String> {
    let checked = match &m.witness {
        Some(w) => check_membership(target, pres, scale, w).map_err(err)?,
        None => false,
    };
    Ok(serde_json::json!({
        "member": m.member,
        "witness_checked": checked,
        "x": m.witness.as_ref().map(|w| w.x.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
        "y": m.witness.as_ref().map(|w| w.y.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
    }))
}

/// The matrix holds the equivariant linking data with the knot's generator last: every
/// column but the last presents H₁ of the exterior, the full matrix the closed manifold.
pub fn alexander(matrix: &Path, u: &str, boundary: Option<&Path>) -> CmdResult {
    let text = read(matrix)?;
    let u: BigRational = u.trim().parse().map_err(|_| format!("cannot parse u = `{}` as a rational", u))?;
    let full = parse_matrix(&text).map_err(err)?;
    if full.rows == 0 || full.cols == 0 {
        return Err("empty matrix".into());
    }
    let n = full.rows;
    let bnd = match boundary {
        Some(p) => parse_boundary(&read(p)?, n)?,
        None => {
            let mut m = vec![LaurentPoly::zero(); n];
            m[n - 1] = LaurentPoly::one();
            Boundary { m, l: full.col(full.cols - 1) }
        }
    };
    let exterior = ModulePresentation::with_default_names(full.select_cols(&(0..full.cols - 1).collect::<Vec<_>>()));
    let closed = ModulePresentation::with_default_names(full.clone());
    let r = ocmt_check(&exterior, &bnd, &u).map_err(err)?;
    let delta = alexander_polynomial(&closed).map_err(err)?;
    let uinv = u.recip();
    let delta_at = delta.eval(&uinv).map_err(err)?;
    let g2 = genus2_obstruction(&exterior).map_err(err)?;

    let mut rep = Report::new("alexander");
    rep.input("matrix", full.to_string())
        .input("u", u.to_string())
        .input("boundary_m", vec_str(&bnd.m))
        .input("boundary_l", vec_str(&bnd.l));
    rep.result("scale", r.scale.to_string())
        .result("m", membership_json(&bnd.m, &exterior, &r.scale, &r.m)?)
        .result("l", membership_json(&bnd.l, &exterior, &r.scale, &r.l)?)
        .result("boundary_divisible", r.boundary_divisible)
        .result("torsion", r.invariants.torsion.iter().map(|p| p.to_string()).collect::<Vec<_>>())
        .number("free_rank", r.invariants.free_rank, Tag::PaperScript)
        .number("min_generators", r.min_generators, Tag::PaperScript)
        .result("cyclic", g2.cyclic)
        .result("ocmt_refuted", g2.cyclic)
        .number("dim_at_u", r.dim_at_u, Tag::PaperScript)
        .number("dim_at_u_inv", r.dim_at_u_inv, Tag::PaperScript)
        .result("alexander_polynomial", delta.to_string())
        .result("delta_at_u_inv", delta_at.to_string())
        .result("delta_vanishes_at_u_inv", delta_at == BigRational::from_integer(0.into()));
    rep.line(format!("scale t - {}", u));
    for (name, target, mem) in [("m", &bnd.m, &r.m), ("l", &bnd.l, &r.l)] {
        match &mem.witness {
            Some(w) => rep.line(format!(
                "{} = {} in (t - {})M: yes, x = {}, y = {}",
                name,
                vec_str(target),
                u,
                vec_str(&w.x),
                vec_str(&w.y)
            )),
            None => rep.line(format!("{} = {} in (t - {})M: no", name, vec_str(target), u)),
        };
    }
    let tors: Vec<String> = r.invariants.torsion.iter().map(|p| format!("Λ/({})", p)).collect();
    rep.line(format!("H1 = Λ^{}{}{}", r.invariants.free_rank, if tors.is_empty() { "" } else { " + " }, tors.join(" + ")));
    rep.line(format!("minimal generators {}, cyclic {}", r.min_generators, yes(g2.cyclic)));
    rep.line(format!("dim at t = {}: {}, at t = {}: {}", u, r.dim_at_u, uinv, r.dim_at_u_inv));
    rep.line(format!("Alexander polynomial {}, value at {} is {}", delta, uinv, delta_at));
    if g2.cyclic {
        rep.line("cyclic module: not an overcommuting manifold of Heegaard genus 2");
    }
    Ok((rep, true))
}

pub fn torus(p: i64, q: i64, cert_out: Option<&Path>, relator_out: Option<&Path>) -> CmdResult {
    let tk = torus_knot(p, q).map_err(err)?;
    let vr = verify_relator_product(&tk.presentation, &tk.relator_product).map_err(err)?;
    let vc = verify_commutator_product(&tk.presentation, &tk.commutator).map_err(err)?;
    let sd = surface_datum(&tk.presentation, &tk.commutator, &tk.m, &tk.l).map_err(err)?;
    let sd_ok = sd.check(&tk.presentation).map_err(err)?;
    let ok = vr.ok && vc.ok && sd_ok;
    let mut rep = Report::new("torus-knot");
    rep.input("p", p).input("q", q);
    rep.number("u", tk.u, Tag::PaperScript)
        .number("v", tk.v, Tag::PaperScript)
        .result("m", tk.m.to_string())
        .result("l", tk.l.to_string())
        .result("relator_product_ok", vr.ok)
        .result("commutator_ok", vc.ok)
        .number("l_s_cost", vr.cost, Tag::VerifiedCertificate)
        .number("cl_r_cost", vc.cost, Tag::VerifiedCertificate)
        .number("genus_bound", vc.cost + 1, Tag::VerifiedCertificate)
        .number("surface_genus", sd.genus, Tag::VerifiedCertificate);
    rep.line(format!("T({},{}): m = {}, l = {}  ({}*{} + {}*{} = 1)", p, q, tk.m, tk.l, q, tk.u, p, tk.v));
    rep.line(format!("relator product cost {} ({})", vr.cost, if vr.ok { "verified" } else { "FAILED" }));
    rep.line(format!("commutator certificate cost {} ({})", vc.cost, if vc.ok { "verified" } else { "FAILED" }));
    rep.line(format!("genus bound {}", vc.cost + 1));
    if let Some(path) = cert_out {
        emit(path, &tk.presentation, Arc::new(vec![]), &tk.commutator)?;
    }
    if let Some(path) = relator_out {
        let doc = CertificateDoc {
            presentation: tk.presentation.clone(),
            vars: Arc::new(vec![]),
            certificate: Certificate::Relator(tk.relator_product.clone()),
        };
        write(path, &to_json(&doc).map_err(err)?)?;
    }
    Ok((rep, ok))
}

pub fn psi(a: &str, alpha: i64, constructive: bool, cert_out: Option<&Path>) -> CmdResult {
    let al = root(alpha)?;
    let a_val = parse_field_auto(a).map_err(err)?;
    if !a_val.vars().is_empty() {
        return Err("a must be a constant".into());
    }
    let mode = if constructive { TranslationMode::Constructive } else { TranslationMode::Axiom };
    let ctx = FieldCtx::new(&["s", "t"]);
    let (s, t) = (ctx.var("s"), ctx.var("t"));
    let ls = translation_pair(al, &s, &t).map_err(err)?;
    let cl = vec![(Word::x(al, s.clone()), Word::x(al, t.clone()))];
    let vls = verify_relator_product(&Presentation::Steinberg, &ls).map_err(err)?;
    let certs = PsiCerts::scripted(&ls, &cl, &a_val, mode).map_err(err)?;
    let c = psi_transport(&ls, &cl, &certs, &a_val).map_err(err)?;
    let v = verify_commutator_product(&Presentation::Steinberg, &c).map_err(err)?;
    let psi_costs: Vec<usize> = certs.relators.iter().map(|(_, c)| c.cost()).collect();
    let max_psi = psi_costs.iter().copied().max().unwrap_or(0);
    let bound = max_psi * vls.cost + 2 * cl.len();
    let ok = vls.ok && v.ok && v.cost <= bound;
    let tag = if v.imported_cost > 0 { Tag::AxiomImport } else { Tag::VerifiedCertificate };
    let mut rep = Report::new("psi");
    rep.input("a", a_val.to_string()).input("alpha", alpha).input("constructive", constructive);
    rep.result("target", ls.target.to_string())
        .result("verified", v.ok)
        .number("l_s_cost", vls.cost, Tag::VerifiedCertificate)
        .number("cl", cl.len(), Tag::VerifiedCertificate)
        .number("psi_relator_cost", max_psi, tag)
        .number("bound", bound, tag)
        .number("cost", v.cost, tag)
        .number("imported_cost", v.imported_cost, Tag::AxiomImport)
        .number("ghys_t2_bound", t2_bound(12, 1).t2_bound, Tag::PaperScript);
    rep.line(format!("[x({0},s), x({0},t)] with a = {1}", alpha, a_val));
    rep.line(format!("l_S {}, cl {}, psi relator certificates cost {}", vls.cost, cl.len(), max_psi));
    rep.line(format!("transported certificate cost {} <= {}*{} + 2*{} = {}: {}", v.cost, max_psi, vls.cost, cl.len(), bound, yes(ok)));
    if v.imported_cost > 0 {
        rep.line(format!("  {} of the cost comes from imported translation blocks", v.imported_cost));
    }
    if let Some(p) = cert_out {
        emit(p, &Presentation::Steinberg, ctx.vars().clone(), &c)?;
    }
    Ok((rep, ok))
}

fn parse_presentation(s: &str) -> Result<(Presentation, Option<Word>), String> {
    if s == "steinberg" {
        return Ok((Presentation::Steinberg, None));
    }
    let pq = s.strip_prefix("torus:").ok_or_else(|| format!("unknown presentation `{}`", s))?;
    let (p, q) = pq.split_once(',').ok_or_else(|| format!("expected torus:p,q, got `{}`", s))?;
    let p: i64 = p.trim().parse().map_err(err)?;
    let q: i64 = q.trim().parse().map_err(err)?;
    let tk = torus_knot(p, q).map_err(err)?;
    Ok((tk.presentation, Some(tk.m.comm(&tk.l))))
}

pub fn search(
    target: Option<&str>,
    presentation: &str,
    max_cost: usize,
    max_len: usize,
    budget: usize,
    cert_out: Option<&Path>,
) -> CmdResult {
    let (pres, default_target) = parse_presentation(presentation)?;
    let (vars, target): (Vars, Word) = match (target, default_target) {
        (Some(t), _) => match pres {
            Presentation::Steinberg => (Arc::new(word_vars(t)), parse_word_auto(t).map_err(err)?),
            _ => (Arc::new(vec![]), parse_word(t, &Arc::new(vec![])).map_err(err)?),
        },
        (None, Some(t)) => (Arc::new(vec![]), t),
        (None, None) => return Err("--target is required for this presentation".into()),
    };
    let out = search_commutator_cert(&target, &pres, max_cost, max_len, budget).map_err(err)?;
    let mut rep = Report::new("search");
    rep.input("target", target.to_string())
        .input("presentation", presentation)
        .input("max_cost", max_cost)
        .input("max_len", max_len)
        .input("budget", budget);
    rep.result("explored", out.explored).result("budget_exhausted", out.budget_exhausted);
    let ok = match &out.certificate {
        Some(c) => {
            let v = verify_commutator_product(&pres, c).map_err(err)?;
            rep.result("found", v.ok).number("cost", v.cost, Tag::Search);
            rep.line(format!("found certificate of cost {} after {} candidates ({})", v.cost, out.explored, if v.ok { "verified" } else { "FAILED" }));
            if let Some(p) = cert_out {
                emit(p, &pres, vars, c)?;
            }
            v.ok
        }
        None => {
            rep.result("found", false);
            rep.line(format!(
                "no certificate of cost <= {} after {} candidates{}",
                max_cost,
                out.explored,
                if out.budget_exhausted { " (budget exhausted)" } else { "" }
            ));
            false
        }
    };
    Ok((rep, ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_file() {
        let b = parse_boundary("# classes\nm: 0, 1\nl: t-2, 0\n", 2).unwrap();
        assert_eq!(b.l[0], parse_laurent("t-2").unwrap());
        assert!(parse_boundary("m: 0, 1\n", 2).is_err());
        assert!(parse_boundary("m: 0\nl: 1\n", 2).unwrap_err().contains("dimension"));
    }

    #[test]
    fn presentations() {
        assert!(matches!(parse_presentation("steinberg").unwrap(), (Presentation::Steinberg, None)));
        assert!(parse_presentation("torus:2,3").unwrap().1.is_some());
        assert!(parse_presentation("torus:2,4").is_err());
        assert!(parse_presentation("free").is_err());
    }
}
