use flipstiefel::char_classes::{SpanEquality, SpanProviso};
use flipstiefel::spectral::transgression_table;
use flipstiefel::{
    betti, classify, coincidence_threshold, e_infinity_dims, euler_characteristic, index_exponent, np, obstruct,
    presentation, residue_table, sw_total, C2Space, FlipManifold, Parallelizable, Verdict,
};
use flipstiefel_witness::{solve, Budget, QuadraticMap, WitnessProblem};
use serde_json::json;

use crate::report::{markdown_table, sig12, Report};
use crate::{verify, Command, Rendered};

pub(crate) const ANCHOR_NF: &str = "N_F(n,2k) = min{ j : n-2k < j <= n, C(k+j-1, j) odd }";
pub(crate) const ANCHOR_COHOMOLOGY: &str =
    "H*(FV_{n,2k}; Z/2) = Z/2[x]/(x^N_F) (x) exterior algebra on the untransgressed fibre classes";
pub(crate) const ANCHOR_SW: &str = "w(TFV_{n,2k}) = (1+x)^{k(n-k-1)}";
pub(crate) const ANCHOR_TABLE: &str = "parallelizability/span table over (k mod 4, n mod 4)";
pub(crate) const ANCHOR_INDEX: &str = "Index(V_{n,2k}, flip) = (x^N_F(n,2k))";
pub(crate) const ANCHOR_NP: &str = "Index(V_{n,k}, antipodal) = (x^N_P(n,k)), N_P(n,k) = min{ j : n-k < j <= n, C(n, j) odd }";
pub(crate) const ANCHOR_MONOTONE: &str = "index containment forbids equivariant maps";
pub(crate) const ANCHOR_THRESHOLD: &str = "f-hat has a zero when k*m < N_F(n,2k)";

const WITNESS_MAX_N: u64 = 256;

type CmdResult = Result<Rendered, String>;

fn text_only(report: Report, text: String) -> Rendered {
    Rendered { report, text, markdown: None, mismatch: false }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn manifold(n: u64, frame: u64) -> Result<FlipManifold, String> {
    FlipManifold::from_frame(n, frame).map_err(err)
}

pub(crate) fn dispatch(cmd: Command, styled: bool) -> CmdResult {
    match cmd {
        Command::Nf { n, frame } => nf_cmd(n, frame),
        Command::Np { n, k } => np_cmd(n, k),
        Command::Betti { n, frame } => betti_cmd(n, frame),
        Command::SpectralCheck { n, frame } => spectral_cmd(n, frame),
        Command::Sw { n, frame } => sw_cmd(n, frame),
        Command::Classify { n, frame } => classify_cmd(n, frame),
        Command::SpanTable => Ok(span_table_cmd()),
        Command::Index { space } => index_cmd(&space),
        Command::Obstruct { source, target } => obstruct_cmd(&source, &target),
        Command::Threshold { n, frame } => threshold_cmd(n, frame),
        Command::Witness { n, frame, m, seed, restarts, max_iters } => {
            witness_cmd(n, frame, m, seed, restarts, max_iters)
        }
        Command::VerifyPaper => Ok(verify::render(&verify::verify_paper(), styled)),
    }
}

fn nf_cmd(n: u64, frame: u64) -> CmdResult {
    let m = manifold(n, frame)?;
    let value = m.nf();
    let report = Report::new("nf")
        .input("n", n)
        .input("frame", frame)
        .output("nf", value)
        .anchor(ANCHOR_NF);
    Ok(text_only(report, value.to_string()))
}

fn np_cmd(n: u64, k: u64) -> CmdResult {
    let value = np(n, k).map_err(err)?;
    let report = Report::new("np")
        .input("n", n)
        .input("k", k)
        .output("np", value)
        .anchor(ANCHOR_NP);
    Ok(text_only(report, value.to_string()))
}

fn poincare(dims: &[u64]) -> String {
    let terms: Vec<String> = dims
        .iter()
        .enumerate()
        .filter(|(_, &d)| d != 0)
        .map(|(t, &d)| {
            let coeff = if d == 1 && t > 0 { String::new() } else { d.to_string() };
            match t {
                0 => coeff,
                1 => format!("{coeff}t"),
                _ => format!("{coeff}t^{t}"),
            }
        })
        .collect();
    terms.join(" + ")
}

fn betti_cmd(n: u64, frame: u64) -> CmdResult {
    let m = manifold(n, frame)?;
    let p = presentation(&m).map_err(err)?;
    let dims = betti(&p);
    let chi = euler_characteristic(&dims);
    let report = Report::new("betti")
        .input("n", n)
        .input("frame", frame)
        .output("nf", p.nf())
        .output("generator_degrees", p.generator_degrees())
        .output("betti", dims.as_slice())
        .output("total", dims.total())
        .output("top_degree", dims.top_degree())
        .output("euler_characteristic", chi)
        .anchor(ANCHOR_NF)
        .anchor(ANCHOR_COHOMOLOGY);
    let text = format!(
        "FV_{{{n},{frame}}}: Z/2[x]/(x^{}) (x) E({})\nPoincare series: {}\ntotal dimension {}, top degree {}, Euler characteristic {chi}",
        p.nf(),
        p.generator_degrees().iter().map(|d| format!("z{d}")).collect::<Vec<_>>().join(", "),
        poincare(dims.as_slice()),
        dims.total(),
        dims.top_degree().unwrap_or(0),
    );
    Ok(text_only(report, text))
}

fn spectral_cmd(n: u64, frame: u64) -> CmdResult {
    let m = manifold(n, frame)?;
    let closed = betti(&presentation(&m).map_err(err)?);
    let spectral = e_infinity_dims(m.n(), m.k()).map_err(err)?;
    let first = transgression_table(m.n(), m.k()).map_err(err)?.first_nonzero();
    let agree = spectral == closed;
    let report = Report::new("spectral-check")
        .input("n", n)
        .input("frame", frame)
        .output("koszul_dims", spectral.as_slice())
        .output("closed_form_dims", closed.as_slice())
        .output("first_transgression", first)
        .output("agree", agree)
        .anchor(ANCHOR_COHOMOLOGY);
    let text = format!(
        "Koszul model:  {:?}\nclosed form:   {:?}\nfirst nonzero transgression hits x^{}\n{}",
        spectral.as_slice(),
        closed.as_slice(),
        first.map_or("-".into(), |j| j.to_string()),
        if agree { "agree" } else { "DISAGREE" }
    );
    Ok(text_only(report, text))
}

fn sw_cmd(n: u64, frame: u64) -> CmdResult {
    let m = manifold(n, frame)?;
    let sw = sw_total(&m).map_err(err)?;
    let coeffs: Vec<u8> = sw.poly().coeffs().into_iter().map(u8::from).collect();
    let report = Report::new("sw")
        .input("n", n)
        .input("frame", frame)
        .output("exponent", sw.exponent())
        .output("truncation", m.nf())
        .output("coefficients", &coeffs)
        .output("first_obstruction", sw.first_obstruction())
        .anchor(ANCHOR_SW);
    let text = format!(
        "w(TFV_{{{n},{frame}}}) = (1+x)^{} = {} in Z/2[x]/(x^{})",
        sw.exponent(),
        sw.poly(),
        m.nf()
    );
    Ok(text_only(report, text))
}

fn classify_cmd(n: u64, frame: u64) -> CmdResult {
    let m = manifold(n, frame)?;
    let r = classify(&m);
    let mut report = Report::new("classify").input("n", n).input("frame", frame);
    let value = serde_json::to_value(&r).expect("span report serializes");
    for (key, v) in value.as_object().expect("span report is an object") {
        if key != "manifold" {
            report = report.output(key, v);
        }
    }
    let report = report.anchor(ANCHOR_SW).anchor(ANCHOR_TABLE);
    let verdict = match r.parallelizable {
        Parallelizable::Yes => "parallelizable",
        Parallelizable::No => "not parallelizable",
        Parallelizable::Unknown => "parallelizability unknown",
    };
    let mut text = format!("FV_{{{n},{frame}}}: {verdict}");
    if let Some(sc) = r.special_case {
        text.push_str(&format!(" (special case: {sc})"));
    }
    text.push_str(&format!(
        "\nw1 = {}, w2 = {}, dim = {} = {} mod 8\nspan = stable span: {}",
        u8::from(r.w1),
        u8::from(r.w2),
        m.dimension(),
        r.dim_mod8,
        match r.span_equals_stable_span {
            SpanEquality::Yes => "yes",
            SpanEquality::Unknown => "unknown",
        }
    ));
    if let Some(i) = r.first_obstruction {
        text.push_str(&format!("\nfirst nonzero Stiefel-Whitney class: w{i}"));
    }
    if r.whitney_conflict {
        text.push_str("\nnote: the Stiefel-Whitney class is nontrivial although the special case is a Lie group");
    }
    Ok(text_only(report, text))
}

/// Modulus in which each row's dimension residue is displayed.
pub(crate) fn table_modulus(k_mod4: u8, n_mod4: u8) -> u8 {
    match (k_mod4, n_mod4) {
        (1, 0) | (1, 2) | (1, 3) | (3, 2) => 4,
        (3, 0) => 8,
        _ => 2,
    }
}

fn span_table_cmd() -> Rendered {
    let rows = residue_table();
    let mut lines = Vec::new();
    let mut md_rows = Vec::new();
    let mut json_rows = Vec::new();
    for r in &rows {
        let modulus = table_modulus(r.k_mod4, r.n_mod4);
        let dim = format!("{} mod {modulus}", r.dim_mod(modulus));
        let conclusion = r.conclusion.to_string();
        lines.push(format!(
            "k={} n={}  w1={} w2={}  dim={:<8} {}",
            r.k_mod4,
            r.n_mod4,
            u8::from(r.w1),
            u8::from(r.w2),
            dim,
            conclusion
        ));
        md_rows.push(vec![
            r.k_mod4.to_string(),
            r.n_mod4.to_string(),
            u8::from(r.w1).to_string(),
            u8::from(r.w2).to_string(),
            dim.clone(),
            conclusion.clone(),
        ]);
        json_rows.push(json!({
            "k_mod4": r.k_mod4,
            "n_mod4": r.n_mod4,
            "representative": { "n": r.representative.n(), "k": r.representative.k() },
            "w1": u8::from(r.w1),
            "w2": u8::from(r.w2),
            "dim_residue": r.dim_mod(modulus),
            "dim_modulus": modulus,
            "not_parallelizable": r.conclusion.not_parallelizable,
            "span_equals_stable_span": r.conclusion.span_equals_stable_span.map(|p| match p {
                SpanProviso::Always => json!("always"),
                SpanProviso::KGreaterThan(b) => json!({ "k_greater_than": b }),
            }),
            "conclusion": conclusion,
        }));
    }
    let report = Report::new("span-table").output("rows", json_rows).anchor(ANCHOR_TABLE).anchor(ANCHOR_SW);
    let markdown = markdown_table(&["k mod 4", "n mod 4", "w1", "w2", "k(2n-2k-1)", "Conclusion"], &md_rows);
    Rendered { report, text: lines.join("\n"), markdown: Some(markdown), mismatch: false }
}

fn parse_space(s: &str) -> Result<C2Space, String> {
    s.parse::<C2Space>().map_err(err)
}

fn index_anchor(s: &C2Space) -> &'static str {
    match s {
        C2Space::FlipStiefel { .. } | C2Space::FlipOrthogonal { .. } => ANCHOR_INDEX,
        C2Space::AntipodalStiefel { .. } | C2Space::AntipodalSO { .. } => ANCHOR_NP,
        C2Space::AntipodalSphere { .. } => "Index(S^{n-1}, antipodal) = (x^n)",
    }
}

fn index_cmd(space: &str) -> CmdResult {
    let s = parse_space(space)?;
    let ideal = index_exponent(&s).map_err(err)?;
    let report = Report::new("index")
        .input("space", s.to_string())
        .output("exponent", ideal.exponent)
        .output("ideal", ideal.to_string())
        .anchor(index_anchor(&s));
    Ok(text_only(report, format!("Index({s}) = {ideal}")))
}

fn obstruct_cmd(source: &str, target: &str) -> CmdResult {
    let (s, t) = (parse_space(source)?, parse_space(target)?);
    let v = obstruct(&s, &t).map_err(err)?;
    let verdict = match v.verdict {
        Verdict::Forbidden => "forbidden",
        Verdict::Unknown => "unknown",
    };
    let report = Report::new("obstruct")
        .input("source", s.to_string())
        .input("target", t.to_string())
        .output("verdict", verdict)
        .output("source_exponent", v.source_exp)
        .output("target_exponent", v.target_exp)
        .anchor(index_anchor(&s))
        .anchor(index_anchor(&t))
        .anchor(ANCHOR_MONOTONE);
    let text = match v.verdict {
        Verdict::Forbidden => format!(
            "no equivariant map {s} -> {t}: (x^{}) is not contained in (x^{})",
            v.target_exp, v.source_exp
        ),
        Verdict::Unknown => format!(
            "index theory does not rule out {s} -> {t}: (x^{}) is contained in (x^{})",
            v.target_exp, v.source_exp
        ),
    };
    Ok(text_only(report, text))
}

fn threshold_cmd(n: u64, frame: u64) -> CmdResult {
    let m = manifold(n, frame)?;
    let t = coincidence_threshold(m.n(), m.k()).map_err(err)?;
    let report = Report::new("threshold")
        .input("n", n)
        .input("frame", frame)
        .output("nf", m.nf())
        .output("threshold", t)
        .anchor(ANCHOR_NF)
        .anchor(ANCHOR_THRESHOLD);
    let text = format!(
        "every f: S^{} -> R^m with m <= {t} has {} mutually orthogonal coincident pairs",
        n - 1,
        m.k()
    );
    Ok(text_only(report, text))
}

fn witness_cmd(n: u64, frame: u64, m: u64, seed: u64, restarts: usize, max_iters: usize) -> CmdResult {
    let fv = manifold(n, frame)?;
    if n > WITNESS_MAX_N {
        return Err(format!("witness search requires n <= {WITNESS_MAX_N}, got n = {n}"));
    }
    if m == 0 || m > WITNESS_MAX_N {
        return Err(format!("witness search requires 1 <= m <= {WITNESS_MAX_N}, got m = {m}"));
    }
    if restarts == 0 {
        return Err("witness search requires --restarts >= 1".into());
    }
    let threshold = coincidence_threshold(fv.n(), fv.k()).map_err(err)?;
    let f = QuadraticMap::seeded(n as usize, m as usize, seed);
    let problem = WitnessProblem::new(n as usize, fv.k() as usize, &f).map_err(err)?;
    let budget = Budget { max_restarts: restarts, max_iters, ..Budget::default() };
    let res = solve(&problem, budget, seed).map_err(err)?;

    let v = res.frame.matrix();
    let matrix: Vec<Vec<f64>> = (0..v.nrows()).map(|i| (0..v.ncols()).map(|j| sig12(v[(i, j)])).collect()).collect();
    let header: Vec<String> = (1..=v.ncols()).map(|j| format!("v{j}")).collect();
    let mut csv = header.join(",");
    for row in &matrix {
        csv.push('\n');
        csv.push_str(&row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
    }
    let guaranteed = m <= threshold;
    let residual = sig12(res.residual);
    let orth = sig12(res.frame.orthonormality_error());
    let report = Report::new("witness")
        .input("n", n)
        .input("frame", frame)
        .input("m", m)
        .input("seed", seed)
        .input("restarts", restarts)
        .input("max_iters", max_iters)
        .output("frame", &matrix)
        .output("residual", residual)
        .output("orthonormality_error", orth)
        .output("converged", res.converged)
        .output("iterations", res.iterations)
        .output("restarts_used", res.restarts_used)
        .output("threshold", threshold)
        .output("existence_guaranteed", guaranteed)
        .anchor(ANCHOR_THRESHOLD);
    let mut text = format!("{csv}\nresidual,{:.11e}\nconverged,{}\n", res.residual, res.converged);
    text.push_str(&format!(
        "restarts,{}\niterations,{}\northonormality_error,{:.11e}",
        res.restarts_used,
        res.iterations,
        res.frame.orthonormality_error()
    ));
    if !guaranteed {
        text.push_str(&format!(
            "\nwarning: m = {m} exceeds the coincidence threshold {threshold}; no zero is guaranteed"
        ));
    }
    Ok(text_only(report, text))
}
