use std::fmt::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rigid_covers::arrangement::combinatorial_automorphisms;
use rigid_covers::bounds::{
    fake_plane_involution_check, hodge_from_invariants, is_maximal, lefschetz_trace, maximal_b1, maximal_b1_my,
    my_identity, prop51_bound, prop52_component_bound, small_component_exclusion, smith_total, ComponentVerdict,
    HodgeData,
};
use rigid_covers::characters::{enumerate_characters, r_profile, unique_profile_elements};
use rigid_covers::cover::{generator_words, invariants, three_canonical_decomposition};
use rigid_covers::cyclotomic::rational_string;
use rigid_covers::io::{load_arrangement, load_cover, load_hodge};
use rigid_covers::symmetry::{classify_real_structures, klein_model};
use serde_json::{json, Value};

pub struct Report {
    pub json: Value,
    pub text: String,
    /// False on a verification mismatch.
    pub ok: bool,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { json, text, ok: true }
    }
}

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn vector(xs: &[u32]) -> String {
    format!("({})", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

pub fn arrangement_info(reference: &str) -> Result<Report> {
    let arr = load_arrangement(reference).with_context(|| format!("loading {reference}"))?;
    let auts = combinatorial_automorphisms(&arr);
    let conj = arr.conjugation_permutation();
    let real: Vec<usize> = arr.real_lines().iter().map(|i| i + 1).collect();
    let table: Vec<(usize, usize)> = arr.multiplicity_table().iter().map(|(&r, &t)| (r, t)).collect();

    let mut text = String::new();
    writeln!(text, "lines        {}", arr.line_count())?;
    for (i, line) in arr.lines().iter().enumerate() {
        let [a, b, c] = line.coeffs();
        writeln!(text, "  L{:<3} [{a}, {b}, {c}]", i + 1)?;
    }
    for (r, t) in &table {
        writeln!(text, "t_{r:<10} {t}")?;
    }
    writeln!(text, "points")?;
    for p in arr.points() {
        writeln!(text, "  {:<12} r={}", p.label(), p.multiplicity())?;
    }
    writeln!(text, "real lines   {}", list(&real))?;
    match &conj {
        Some(c) => writeln!(text, "conjugation  {c}")?,
        None => writeln!(text, "conjugation  not a line permutation")?,
    }
    writeln!(text, "automorphisms {}", auts.len())?;

    let json = json!({
        "lines": arr.lines().iter().map(|l| l.coeffs().clone()).collect::<Vec<_>>(),
        "multiplicities": table.iter().map(|(r, t)| (r.to_string(), json!(t))).collect::<serde_json::Map<_, _>>(),
        "points": arr.points().iter().map(|p| json!({
            "label": p.label(),
            "lines": p.incident.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "multiplicity": p.multiplicity(),
        })).collect::<Vec<_>>(),
        "real_lines": real,
        "conjugation": conj,
        "automorphisms": auts.len(),
    });
    Ok(Report::ok(json, text))
}

pub fn cover_smoothness(reference: &str) -> Result<Report> {
    let cover = load_cover(reference).with_context(|| format!("loading {reference}"))?;
    let cert = cover.certificate();
    let mut text = String::new();
    for c in &cert.checks {
        let pairs: Vec<String> = c
            .pairs
            .iter()
            .map(|p| {
                format!(
                    "{}{}{}",
                    vector(&p.left),
                    if p.independent { "|" } else { "~" },
                    vector(&p.right)
                )
            })
            .collect();
        let kind = serde_json::to_value(&c.kind)?;
        writeln!(
            text,
            "{:<4} {:<12} {:<26} {}",
            if c.passed { "ok" } else { "FAIL" },
            c.label,
            kind.as_str().unwrap_or_default(),
            pairs.join(" ")
        )?;
    }
    writeln!(text, "smooth       {}", cert.smooth)?;
    let json = json!({
        "blown_up": cover.blown().points().iter().map(|&p| cover.arrangement().point(p).label()).collect::<Vec<_>>(),
        "certificate": cert,
    });
    Ok(Report::ok(json, text))
}

pub fn cover_invariants(reference: &str) -> Result<Report> {
    let cover = load_cover(reference).with_context(|| format!("loading {reference}"))?;
    let inv = invariants(&cover)?;
    let words = generator_words(cover.phi());
    let deck = cover.deck();
    let three_k = three_canonical_decomposition(&cover).ok();

    let mut text = inv.to_string();
    writeln!(
        text,
        "deck group   order {}, Galois kernel order {}",
        deck.order(),
        deck.kernel_order()
    )?;
    for (j, w) in words.iter().enumerate() {
        writeln!(text, "w{}^{} = {w}", j + 1, cover.phi().modulus())?;
    }
    if let Some(t) = &three_k {
        let terms: Vec<String> = t
            .terms
            .iter()
            .map(|t| format!("{} {}", rational_string(&t.coefficient), t.name))
            .collect();
        writeln!(text, "3K = {}", terms.join(" + "))?;
        writeln!(text, "3K integral  {}", t.integral)?;
    }

    let json = json!({
        "invariants": inv,
        "deck_order": deck.order(),
        "galois_kernel_order": deck.kernel_order(),
        "generator_words": words.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        "three_canonical": three_k,
    });
    Ok(Report::ok(json, text))
}

pub fn characters_list(reference: &str) -> Result<Report> {
    let cover = load_cover(reference).with_context(|| format!("loading {reference}"))?;
    let set = enumerate_characters(cover.phi())?;
    let m = set.m;
    let unique = unique_profile_elements(&set);
    let mut text = String::new();
    writeln!(text, "|A|          {}", set.len())?;
    for a in &set.elements {
        let mark = if unique.contains(a) { "  unique" } else { "" };
        writeln!(
            text,
            "{:<24} profile {}{mark}",
            vector(a),
            vector(&to_u32(&r_profile(a, m)))
        )?;
    }
    let json = json!({
        "m": m,
        "elements": set.elements.iter().map(|a| json!({
            "character": a,
            "profile": r_profile(a, m),
            "unique": unique.contains(a),
        })).collect::<Vec<_>>(),
        "unique_profile_elements": unique,
    });
    Ok(Report::ok(json, text))
}

fn to_u32(xs: &[usize]) -> Vec<u32> {
    xs.iter().map(|&x| x as u32).collect()
}

pub fn symmetry_search(reference: &str) -> Result<Report> {
    let cover = load_cover(reference).with_context(|| format!("loading {reference}"))?;
    let auts = combinatorial_automorphisms(cover.arrangement());
    let model = klein_model(&cover)?;
    let anti = model.anti_involutions();

    let mut text = String::new();
    writeln!(text, "automorphisms        {}", auts.len())?;
    writeln!(text, "realized symmetries  {}", model.symmetries().len())?;
    for s in model.symmetries() {
        let kind = if s.symmetry.anti { "anti" } else { "hol" };
        let rows: Vec<String> = s.deck_action.iter().map(|r| vector(r)).collect();
        writeln!(
            text,
            "  {:<24} {kind:<5} G-action [{}]",
            s.symmetry.perm.to_string(),
            rows.join(" ")
        )?;
    }
    writeln!(text, "combinatorial only   {}", model.combinatorial_only().len())?;
    for (p, a) in model.combinatorial_only() {
        writeln!(text, "  {:<24} {}", p.to_string(), if *a { "anti" } else { "hol" })?;
    }
    writeln!(text, "|Kl|                 {}", model.order())?;
    writeln!(text, "anti elements        {}", model.has_anti())?;
    writeln!(text, "anti involutions     {}", anti.len())?;

    let json = json!({
        "automorphisms": auts.len(),
        "symmetries": model.symmetries(),
        "combinatorial_only": model.combinatorial_only().iter().map(|(p, a)| json!({
            "perm": p,
            "anti": a,
        })).collect::<Vec<_>>(),
        "kl_order": model.order(),
        "has_anti": model.has_anti(),
        "anti_involutions": anti.len(),
    });
    Ok(Report::ok(json, text))
}

pub fn real_classify(reference: &str) -> Result<Report> {
    let cover = load_cover(reference).with_context(|| format!("loading {reference}"))?;
    let model = klein_model(&cover)?;
    let classes = classify_real_structures(&model)?;
    let mut text = String::new();
    writeln!(text, "classes      {}", classes.len())?;
    for (i, c) in classes.iter().enumerate() {
        let fp = &c.fingerprint;
        writeln!(text, "class {}", i + 1)?;
        writeln!(
            text,
            "  representative  {} gamma {}",
            c.permutation,
            vector(&c.representative.gamma)
        )?;
        writeln!(text, "  size            {}", c.size)?;
        writeln!(text, "  real lines      {}", list(&fp.real_lines))?;
        writeln!(text, "  real centers    {}", fp.real_blown_centers.join(" "))?;
        if let Some(t) = &fp.topology {
            writeln!(
                text,
                "  real part       e = {}, Betti {}",
                t.euler,
                vector(&t.z2_betti.map(|b| b as u32))
            )?;
        }
    }
    let json = json!({ "kl_order": model.order(), "classes": classes });
    Ok(Report::ok(json, text))
}

struct Evaluation {
    json: Value,
    text: String,
    ok: bool,
}

/// Bound checks for one Hodge dataset. Without a real part only the
/// complex side is reported.
fn evaluate(h: &HodgeData, real_part: bool, k3: Option<u64>, negatively_curved: bool) -> Result<Evaluation> {
    h.validate()?;
    let mut text = String::new();
    let mut ok = true;
    let smith = smith_total(h);
    let my = my_identity(h);
    writeln!(
        text,
        "  hodge           h10={} h20={} h11={} nu={} p+={} p-={}",
        h.h10, h.h20, h.h11, h.nu, h.p_plus, h.p_minus
    )?;
    writeln!(text, "  smith total     {smith}")?;
    writeln!(text, "  MY identity     {my}")?;
    let mut json = json!({ "hodge": h, "smith_total": smith, "my_identity": my });
    if my {
        let bound = prop51_bound(h)?;
        writeln!(text, "  maximal data needs h20 >= {bound}")?;
        json["maximal_h20_lower_bound"] = json!(bound);
    }
    if !real_part {
        return Ok(Evaluation { json, text, ok });
    }

    let real = h.real_betti_total();
    let trace = lefschetz_trace(h)?;
    let split_trace = h.p_plus as i64 - h.p_minus as i64;
    let maximal = is_maximal(h);
    let trace_consistent = h.components.is_empty() || trace == split_trace;
    ok &= real <= smith && trace_consistent;
    let components: Vec<String> = h
        .components
        .iter()
        .map(|b| format!("({},{},{})", b[0], b[1], b[2]))
        .collect();
    writeln!(text, "  components      {}", components.join(" "))?;
    writeln!(text, "  real total      {real}")?;
    writeln!(text, "  maximal         {maximal}")?;
    writeln!(text, "  lefschetz trace {trace} (p+ - p- = {split_trace})")?;
    json["real_total"] = json!(real);
    json["smith_inequality"] = json!(real <= smith);
    json["maximal"] = json!(maximal);
    json["lefschetz_trace"] = json!(trace);
    json["trace_consistent"] = json!(trace_consistent);

    if maximal {
        let b1 = maximal_b1(h);
        writeln!(text, "  maximal b1      {b1}")?;
        json["maximal_b1"] = json!(b1);
        if my {
            let b1_my = maximal_b1_my(h)?;
            writeln!(text, "  maximal b1 (MY) {b1_my}")?;
            json["maximal_b1_my"] = json!(b1_my);
            ok &= b1 == b1_my;
        }
    }
    if my {
        let k3 = k3.unwrap_or_else(|| h.components.iter().filter(|b| b[1] >= 3).count() as u64);
        let cb = prop52_component_bound(h, k3)?;
        let verdict = serde_json::to_value(cb.verdict)?;
        writeln!(
            text,
            "  component bound k3={} slack={} {}{}",
            cb.k3,
            cb.slack,
            verdict.as_str().unwrap_or_default(),
            if maximal { "" } else { " (applies to maximal data)" }
        )?;
        let mut bound = serde_json::to_value(&cb)?;
        bound["applies"] = json!(maximal);
        json["component_bound"] = bound;
    }
    let mut verdicts = Vec::new();
    for &b in &h.components {
        let v = small_component_exclusion(b, negatively_curved);
        let line = match &v {
            ComponentVerdict::Accepted => "accepted".to_string(),
            ComponentVerdict::Rejected(why) => format!("rejected ({why})"),
        };
        writeln!(text, "  component ({},{},{}) {line}", b[0], b[1], b[2])?;
        let mut entry = serde_json::to_value(&v)?;
        entry["betti"] = json!(b);
        verdicts.push(entry);
    }
    json["component_verdicts"] = json!(verdicts);
    Ok(Evaluation { json, text, ok })
}

fn fake_plane_section(text: &mut String) -> Result<Value> {
    let fp = fake_plane_involution_check();
    writeln!(text, "fake plane involution")?;
    writeln!(text, "  fixed curves excluded  {}", fp.fixed_curves_excluded)?;
    writeln!(text, "  Lefschetz fixed points {}", fp.lefschetz_fixed_points)?;
    writeln!(text, "  det(Id - D) per point  {}", fp.det_per_point)?;
    writeln!(
        text,
        "  holomorphic sum        {} (expected {})",
        rational_string(&fp.holomorphic_sum),
        rational_string(&fp.holomorphic_expected)
    )?;
    writeln!(text, "  contradiction          {}", fp.contradiction)?;
    Ok(serde_json::to_value(&fp)?)
}

pub fn bounds_check(input: &str, k3: Option<u64>, negatively_curved: bool, q: u64) -> Result<Report> {
    let mut text = String::new();
    let mut ok = true;
    let mut datasets = Vec::new();

    if input.starts_with("builtin:") {
        let cover = load_cover(input).with_context(|| format!("loading {input}"))?;
        let inv = invariants(&cover)?;
        let base = hodge_from_invariants(inv.k_squared, inv.euler, q)?;
        writeln!(text, "surface      K^2={} e={} q={q}", inv.k_squared, inv.euler)?;
        let model = klein_model(&cover)?;
        let classes = classify_real_structures(&model)?;
        if classes.is_empty() {
            writeln!(text, "no real structures")?;
            let e = evaluate(&base, false, k3, negatively_curved)?;
            text.push_str(&e.text);
            ok &= e.ok;
            datasets.push(json!({ "real_structure": Value::Null, "report": e.json }));
        }
        for (i, c) in classes.iter().enumerate() {
            let Some(topology) = &c.fingerprint.topology else {
                bail!("real part topology of class {} is not available", i + 1);
            };
            let h = base.clone().with_components(vec![topology.z2_betti])?;
            writeln!(text, "real structure {} ({})", i + 1, c.permutation)?;
            let e = evaluate(&h, true, k3, negatively_curved)?;
            text.push_str(&e.text);
            ok &= e.ok;
            datasets.push(json!({ "real_structure": i + 1, "report": e.json }));
        }
    } else {
        let h = load_hodge(Path::new(input)).with_context(|| format!("loading {input}"))?;
        writeln!(text, "hodge data   {input}")?;
        let e = evaluate(&h, true, k3, negatively_curved)?;
        text.push_str(&e.text);
        ok &= e.ok;
        datasets.push(e.json);
    }

    let fake_plane = fake_plane_section(&mut text)?;
    writeln!(text, "verdict      {}", if ok { "consistent" } else { "INCONSISTENT" })?;
    let json = json!({ "datasets": datasets, "fake_plane": fake_plane, "consistent": ok });
    Ok(Report { json, text, ok })
}

pub fn paper_verify() -> Result<Report> {
    let report = rigid_covers::verify::paper_verify()?;
    let mut text = String::new();
    for c in &report.checks {
        if c.passed {
            writeln!(text, "ok   {}", c.name)?;
        } else {
            writeln!(text, "FAIL {}: expected {}, got {}", c.name, c.expected, c.actual)?;
        }
    }
    let failed = report.failures().count();
    writeln!(text, "{} checks, {} failed", report.checks.len(), failed)?;
    let ok = report.passed();
    let json = json!({ "passed": ok, "checks": report.checks });
    Ok(Report { json, text, ok })
}
