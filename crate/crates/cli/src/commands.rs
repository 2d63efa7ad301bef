use serde::Serialize;

use steklov_trees::closed::{closed_steklov, ClosedSpectrum};
use steklov_trees::enumerate::{class_codes, free_tree_codes, random_tree};
use steklov_trees::extremal::{
    describe, explore_conjecture, verify_sigma_k_all_trees, verify_theorem, ConjectureReport,
    VerificationReport,
};
use steklov_trees::graph::{leaves, tree_from_code, CanonicalCode};
use steklov_trees::spectra::{laplacian_spectrum, leaf_steklov_spectrum};
use steklov_trees::{FamilySpec, Spectrum, TreeGraph};

use crate::output::{emit, fixed, opt, to_csv, to_json};
use crate::{
    CliError, ConjectureArgs, EnumerateArgs, Format, OperatorChoice, Source, SpectrumArgs,
    VerifyArgs,
};

/// Largest tree accepted by `--random`.
const MAX_RANDOM_ORDER: usize = 500;

#[derive(Serialize)]
struct ClosedReport {
    family: String,
    spectrum: ClosedSpectrum,
    max_deviation: Option<f64>,
    agrees: bool,
    tol: f64,
}

#[derive(Serialize)]
struct SpectrumOutput {
    graph: String,
    order: usize,
    boundary: Vec<usize>,
    steklov: Option<Spectrum>,
    laplacian: Option<Spectrum>,
    closed_form: Option<ClosedReport>,
}

fn load(source: Source, seed: u64) -> Result<(TreeGraph, String, Option<FamilySpec>), CliError> {
    match source {
        Source::Family(spec) => {
            let tree = spec.build()?;
            Ok((tree, spec.to_string(), Some(spec)))
        }
        Source::File(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::Usage(format!("reading {}: {e}", path.display())))?;
            let tree = TreeGraph::parse_edge_list(&text)?;
            let name = describe(&tree);
            let spec = FamilySpec::recognize(&tree);
            Ok((tree, name, spec))
        }
        Source::Random(n) => {
            if !(2..=MAX_RANDOM_ORDER).contains(&n) {
                return Err(CliError::Usage(format!(
                    "--random needs 2 <= n <= {MAX_RANDOM_ORDER}, got {n}"
                )));
            }
            let tree = random_tree(n, seed);
            Ok((tree, format!("random:{n},seed={seed}"), None))
        }
    }
}

pub fn spectrum(args: &SpectrumArgs, tol: f64) -> Result<(), CliError> {
    let (tree, graph, spec) = load(args.source()?, args.seed)?;
    let want_steklov = args.operator != OperatorChoice::Laplacian;
    let want_laplacian = args.operator != OperatorChoice::Steklov;

    let steklov = if want_steklov || args.closed_form {
        Some(leaf_steklov_spectrum(&tree)?)
    } else {
        None
    };
    let laplacian = if want_laplacian {
        Some(laplacian_spectrum(&tree)?)
    } else {
        None
    };
    let closed_form = match (&spec, args.closed_form, &steklov) {
        (Some(spec), true, Some(numeric)) => match closed_steklov(spec) {
            Some(closed) => {
                let closed = closed?;
                let dev = closed.max_deviation(&numeric.values);
                Some(ClosedReport {
                    family: spec.to_string(),
                    spectrum: closed,
                    max_deviation: dev,
                    agrees: dev.is_some_and(|d| d <= tol),
                    tol,
                })
            }
            None => None,
        },
        _ => None,
    };
    if args.closed_form && closed_form.is_none() {
        eprintln!("note: no closed-form Steklov spectrum for {graph}");
    }
    let disagrees = closed_form.as_ref().is_some_and(|c| !c.agrees);

    let out = SpectrumOutput {
        graph,
        order: tree.order(),
        boundary: leaves(&tree).members().to_vec(),
        steklov: if want_steklov { steklov } else { None },
        laplacian,
        closed_form,
    };
    let text = match args.format {
        Format::Json => to_json(&out)?,
        Format::Csv => spectrum_csv(&out)?,
        Format::Text => spectrum_text(&out),
    };
    emit(args.out.as_deref(), &text)?;
    if disagrees {
        return Err(CliError::Failed);
    }
    Ok(())
}

fn spectrum_csv(out: &SpectrumOutput) -> Result<String, CliError> {
    let mut rows = Vec::new();
    for (kind, s) in [("steklov", &out.steklov), ("laplacian", &out.laplacian)] {
        if let Some(s) = s {
            for (i, v) in s.values.iter().enumerate() {
                rows.push(vec![
                    kind.into(),
                    (i + 1).to_string(),
                    v.to_string(),
                    String::new(),
                    "1".into(),
                    String::new(),
                ]);
            }
        }
    }
    if let Some(c) = &out.closed_form {
        for (i, e) in c.spectrum.entries.iter().enumerate() {
            rows.push(vec![
                "closed_steklov".into(),
                (i + 1).to_string(),
                e.value.value().to_string(),
                e.value.to_string(),
                e.multiplicity.to_string(),
                e.label.clone(),
            ]);
        }
    }
    to_csv(
        &[
            "operator",
            "index",
            "value",
            "exact",
            "multiplicity",
            "label",
        ],
        rows,
    )
}

fn spectrum_text(out: &SpectrumOutput) -> String {
    let join = |v: &[usize]| {
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut s = format!(
        "graph {}\norder {}\nboundary {}\n",
        out.graph,
        out.order,
        join(&out.boundary)
    );
    for (kind, spec) in [("steklov", &out.steklov), ("laplacian", &out.laplacian)] {
        if let Some(spec) = spec {
            let values: Vec<String> = spec.values.iter().map(|&v| fixed(v)).collect();
            s.push_str(&format!("{kind} {}\n", values.join(" ")));
        }
    }
    if let Some(c) = &out.closed_form {
        let entries: Vec<String> = c
            .spectrum
            .entries
            .iter()
            .map(|e| format!("{} x{} ({})", e.value, e.multiplicity, e.label))
            .collect();
        s.push_str(&format!("closed {}\n", entries.join("; ")));
        s.push_str(&format!(
            "closed max deviation {} ({})\n",
            c.max_deviation.map_or("n/a".into(), |d| format!("{d:e}")),
            if c.agrees { "agrees" } else { "DISAGREES" }
        ));
    }
    s
}

#[derive(Serialize)]
struct EnumeratedTree {
    code: CanonicalCode,
    name: String,
    edges: Vec<(usize, usize)>,
}

pub fn enumerate(args: &EnumerateArgs) -> Result<(), CliError> {
    let codes: Vec<CanonicalCode> = match (args.n, args.class) {
        (Some(n), _) => free_tree_codes(n)?.as_ref().clone(),
        (None, Some(q)) => class_codes(q)?,
        (None, None) => return Err(CliError::Usage("one of --n, --class is required".into())),
    };
    if args.count_only {
        let text = match args.format {
            Format::Json => to_json(&serde_json::json!({ "count": codes.len() }))?,
            _ => format!("{}\n", codes.len()),
        };
        return emit(args.out.as_deref(), &text);
    }
    let mut trees = Vec::with_capacity(codes.len());
    for code in codes {
        let tree = tree_from_code(&code)?;
        trees.push(EnumeratedTree {
            name: describe(&tree),
            edges: tree.edges().to_vec(),
            code,
        });
    }
    let text = match (args.format, args.codes) {
        (Format::Json, _) => to_json(&trees)?,
        (Format::Csv, _) => to_csv(
            &["code", "name", "order", "edges"],
            trees
                .iter()
                .map(|t| {
                    let edges: Vec<String> =
                        t.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
                    vec![
                        t.code.to_string(),
                        t.name.clone(),
                        t.code.order().to_string(),
                        edges.join(" "),
                    ]
                })
                .collect(),
        )?,
        (Format::Text, true) => trees.iter().map(|t| format!("{}\n", t.code)).collect(),
        (Format::Text, false) => {
            let mut s = String::new();
            for (i, t) in trees.iter().enumerate() {
                if i > 0 {
                    s.push('\n');
                }
                s.push_str(&format!("# {} {}\n{}\n", t.code, t.name, t.code.order()));
                for (u, v) in &t.edges {
                    s.push_str(&format!("{u} {v}\n"));
                }
            }
            s
        }
    };
    emit(args.out.as_deref(), &text)
}

pub fn verify(args: &VerifyArgs, tol: f64) -> Result<(), CliError> {
    let reports = verify_theorem(args.theorem, args.max_n, args.max_b, args.max_m, tol)?;
    let mut all = reports;
    if args.theorem == steklov_trees::closed::Theorem::Older {
        all.extend(verify_sigma_k_all_trees(args.max_n.max(4), tol)?);
    }
    let text = match args.format {
        Format::Json => to_json(&all)?,
        Format::Csv => verify_csv(&all)?,
        Format::Text => verify_text(&all),
    };
    emit(args.out.as_deref(), &text)?;
    let failed = all.iter().filter(|r| !r.passed).count();
    if args.out.is_some() {
        println!("{} reports, {} failed", all.len(), failed);
    }
    if failed > 0 {
        return Err(CliError::Failed);
    }
    Ok(())
}

fn verify_csv(reports: &[VerificationReport]) -> Result<String, CliError> {
    let rows = reports
        .iter()
        .map(|r| {
            vec![
                r.theorem.to_string(),
                r.class.clone(),
                r.case.clone(),
                r.quantity.clone(),
                fixed(r.bound),
                r.bound_exact.clone(),
                r.class_size.to_string(),
                opt(r.observed_max),
                r.argmax_names.join(";"),
                r.claimed.join(";"),
                r.extremal_matches.to_string(),
                format!("{:?}", r.uniqueness_claim),
                r.passed.to_string(),
                r.failures.join("; "),
            ]
        })
        .collect();
    to_csv(
        &[
            "theorem",
            "class",
            "case",
            "quantity",
            "bound",
            "bound_exact",
            "class_size",
            "max",
            "argmax",
            "claimed",
            "extremal_matches",
            "uniqueness",
            "passed",
            "failures",
        ],
        rows,
    )
}

fn verify_text(reports: &[VerificationReport]) -> String {
    let mut s = String::new();
    for r in reports {
        s.push_str(&format!(
            "{} {} [{}] bound {} = {} max {} at {} ({} trees) {}\n",
            if r.passed { "PASS" } else { "FAIL" },
            r.class,
            r.case,
            r.bound_exact,
            fixed(r.bound),
            opt(r.observed_max),
            r.argmax_names.join(", "),
            r.class_size,
            r.failures.join("; ")
        ));
    }
    s
}

pub fn conjecture(args: &ConjectureArgs, tol: f64) -> Result<(), CliError> {
    let report = explore_conjecture(args.b, args.r, args.operator, tol)?;
    let text = match args.format {
        Format::Json => to_json(&report)?,
        Format::Csv => conjecture_csv(&report)?,
        Format::Text => conjecture_text(&report),
    };
    emit(args.out.as_deref(), &text)
}

fn conjecture_csv(r: &ConjectureReport) -> Result<String, CliError> {
    to_csv(
        &[
            "b",
            "r",
            "operator",
            "class",
            "class_size",
            "proven_bound",
            "class_max",
            "argmax",
            "conjectured_graph",
            "conjectured_value",
            "gap",
            "agrees",
        ],
        vec![vec![
            r.b.to_string(),
            r.r.to_string(),
            r.operator.to_string(),
            r.class.clone(),
            r.class_size.to_string(),
            fixed(r.proven_bound),
            opt(r.class_max),
            r.argmax_names.join(";"),
            r.conjectured_graph.clone(),
            fixed(r.conjectured_value),
            r.gap.map_or(String::new(), |g| format!("{g:e}")),
            r.agrees.to_string(),
        ]],
    )
}

fn conjecture_text(r: &ConjectureReport) -> String {
    format!(
        "class {} ({} trees, {})\nproven bound {}\nclass max {} at {}\nconjectured {} = {}{}\ngap {}\nagrees {}\n",
        r.class,
        r.class_size,
        r.operator,
        fixed(r.proven_bound),
        opt(r.class_max),
        r.argmax_names.join(", "),
        r.conjectured_graph,
        fixed(r.conjectured_value),
        if r.note.is_empty() { String::new() } else { format!(" ({})", r.note) },
        r.gap.map_or("n/a".into(), |g| format!("{g:e}")),
        r.agrees
    )
}
