use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use digroup_core::envalg::{build_enveloping_algebra, derivation_ext1, rep_to_module};
use digroup_core::example;
use digroup_core::ext::{self, ShortExactSeq};
use digroup_core::format::{self, LoadOptions, RepFile, SesFile};
use digroup_core::generate::Generator;
use digroup_core::halo::verify_collapse;
use digroup_core::{AxiomReport, Digroup, Error, Field, Representation};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Load { path: PathBuf, source: Error },
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Read { .. } => 2,
            CliError::Load { source, .. } if format::is_input_error(source) => 2,
            CliError::Core(e) if format::is_input_error(e) => 2,
            _ => 1,
        }
    }
}

pub struct Context {
    pub field: Option<Field>,
    pub seed: u64,
}

impl Context {
    fn load_options(&self, validate: bool) -> LoadOptions {
        LoadOptions {
            field: self.field,
            validate,
        }
    }

    fn field_or_rational(&self) -> Field {
        self.field.unwrap_or(Field::Rational)
    }
}

/// What a command reports; `ok` decides the exit status.
pub struct Outcome {
    pub ok: bool,
    pub text: String,
    pub json: Value,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn load_with<T>(path: &Path, f: impl FnOnce(&str) -> digroup_core::Result<T>) -> Result<T, CliError> {
    let text = read(path)?;
    f(&text).map_err(|source| CliError::Load {
        path: path.to_path_buf(),
        source,
    })
}

fn load_rep(ctx: &Context, path: &Path) -> Result<Representation, CliError> {
    load_with(path, |t| format::representation_from_json(t, ctx.load_options(true)))
}

/// Loads `Q` and `W` onto one shared digroup.
fn load_pair(ctx: &Context, qp: &Path, wp: &Path) -> Result<(Representation, Representation), CliError> {
    let q = load_rep(ctx, qp)?;
    let w = load_rep(ctx, wp)?;
    if !q.same_digroup(&w) {
        return Err(Error::DigroupMismatch.into());
    }
    Ok((q, w))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn report_text(title: &str, report: &AxiomReport) -> String {
    format!("{title}\n{report}")
}

pub fn check(ctx: &Context, path: &Path) -> Result<Outcome, CliError> {
    let text = read(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| CliError::Load {
        path: path.to_path_buf(),
        source: e.into(),
    })?;
    let wrap = |source: Error| CliError::Load {
        path: path.to_path_buf(),
        source,
    };
    let opts = ctx.load_options(false);
    let (kind, rep, subspace, digroup) = if value.get("representation").is_some() {
        let file: SesFile = serde_json::from_value(value).map_err(|e| wrap(e.into()))?;
        let (v, basis) = file.build(opts).map_err(wrap)?;
        let d = v.digroup().clone();
        ("sequence", Some(v), Some(basis), d)
    } else if value.get("digroup").is_some() {
        let file: RepFile = serde_json::from_value(value).map_err(|e| wrap(e.into()))?;
        let v = file.build(opts).map_err(wrap)?;
        let d = v.digroup().clone();
        ("representation", Some(v), None, d)
    } else {
        let file: format::DigroupFile = serde_json::from_value(value).map_err(|e| wrap(e.into()))?;
        ("digroup", None, None, Arc::new(file.build(false).map_err(wrap)?))
    };

    let digroup_report = digroup.check_axioms();
    let mut out = report_text("digroup axioms", &digroup_report);
    let mut all = digroup_report.clone();
    let mut body = json!({ "kind": kind, "digroup": digroup_report });
    if let Some(v) = &rep {
        let r = v.check_representation();
        out += &report_text("representation axioms", &r);
        body["representation"] = to_value(&r);
        all.extend(r);
    }
    let mut stable = None;
    if let (Some(v), Some(basis)) = (&rep, &subspace) {
        let s = v.is_subrepresentation(basis).map_err(wrap)?;
        let _ = writeln!(
            out,
            "subspace\n  [{}] stable under every λ and ρ",
            if s { "pass" } else { "FAIL" }
        );
        body["subspace_stable"] = json!(s);
        stable = Some(s);
    }
    let ok = all.all_passed() && stable != Some(false);
    let _ = writeln!(out, "{}", if ok { "ok" } else { "FAILED" });
    body["ok"] = json!(ok);
    Ok(Outcome {
        ok,
        text: out,
        json: body,
    })
}

#[derive(Serialize)]
struct Ext1Report {
    ext1_rep_dim: usize,
    derivation_dim: usize,
    #[serde(rename = "ext1_BE_invariant_dim")]
    ext1_be_invariant_dim: usize,
    agree: bool,
    collapse_ok: bool,
}

/// All three Ext¹ dimensions for a pair, with the collapse flag.
fn three_way(q: &Representation, w: &Representation) -> Result<Ext1Report, Error> {
    let rep = ext::ext1_dim(q, w)?;
    let algebra = Arc::new(build_enveloping_algebra(q.digroup(), q.field()));
    let der = derivation_ext1(&rep_to_module(q, &algebra)?, &rep_to_module(w, &algebra)?)?;
    let collapse = verify_collapse(q, w)?;
    let agree = rep.dim_ext == der.dim && der.dim == collapse.ext1_be_invariant_dim;
    Ok(Ext1Report {
        ext1_rep_dim: rep.dim_ext,
        derivation_dim: der.dim,
        ext1_be_invariant_dim: collapse.ext1_be_invariant_dim,
        agree,
        collapse_ok: collapse.collapse_ok,
    })
}

pub fn ext1(ctx: &Context, qp: &Path, wp: &Path) -> Result<Outcome, CliError> {
    let (q, w) = load_pair(ctx, qp, wp)?;
    let r = three_way(&q, &w)?;
    let text = format!(
        "Ext1 over representations:      {}\nExt1 over the enveloping algebra: {}\nG-invariant Ext1 over B_E:      {}\n{}\ncollapse_ok: {}\n",
        r.ext1_rep_dim,
        r.derivation_dim,
        r.ext1_be_invariant_dim,
        if r.agree { "all three agree" } else { "DISAGREEMENT" },
        r.collapse_ok
    );
    Ok(Outcome {
        ok: r.agree && r.collapse_ok,
        text,
        json: to_value(&r),
    })
}

fn load_ses(ctx: &Context, path: &Path) -> Result<ShortExactSeq, CliError> {
    load_with(path, |t| {
        let file: SesFile = serde_json::from_str(t)?;
        file.build_sequence(ctx.load_options(true))
    })
}

pub fn split(ctx: &Context, path: &Path) -> Result<Outcome, CliError> {
    let ses = load_ses(ctx, path)?;
    let (q, w) = (ses.quotient(), ses.sub());
    let e = ext::ext1_dim(q, w)?;
    let decision = ext::is_split(&ses)?;
    let d: &Digroup = ses.mid().digroup();
    let mut text = format!(
        "{}\ndim Z1 = {}, dim B1 = {}, class dim {}\n",
        if decision.split { "split" } else { "nonsplit" },
        e.dim_z,
        e.dim_b,
        e.dim_ext
    );
    let mut body = json!({
        "dim_Z": e.dim_z,
        "dim_B": e.dim_b,
        "dim_ext": e.dim_ext,
        "split": decision.split,
    });
    if let Some(theta) = &decision.certificate {
        text += "certificate (cocycle of the averaged section):\n";
        for (x, m) in d.elements().zip(&theta.theta) {
            let _ = writeln!(text, "  θ{x} = {m}");
        }
        body["certificate"] = to_value(&format::cocycle_to_json(d, theta));
    }
    if let Some(s) = &decision.witness {
        let _ = writeln!(text, "equivariant section: {s}");
        body["section"] = to_value(&format::matrix_to_json(s));
    }
    Ok(Outcome {
        ok: true,
        text,
        json: body,
    })
}

pub fn collapse(ctx: &Context, qp: &Path, wp: &Path) -> Result<Outcome, CliError> {
    let (q, w) = load_pair(ctx, qp, wp)?;
    let r = verify_collapse(&q, &w)?;
    let mut text = format!(
        "Hom: B_E-linear {}, G-invariant {}, over representations {}\nExt1: over B_E {}, G-invariant {}, over representations {}\n",
        r.hom_be_dim, r.invariants_dim, r.hom_rep_dim, r.ext1_be_dim, r.ext1_be_invariant_dim, r.ext1_rep_dim
    );
    if let Some(s) = r.splitting_criterion {
        let _ = writeln!(text, "every extension splits: {s}");
    }
    let _ = writeln!(text, "collapse_ok: {}", r.collapse_ok);
    Ok(Outcome {
        ok: r.collapse_ok && r.hom_ok(),
        text,
        json: to_value(&r),
    })
}

pub fn probe(ctx: &Context, paths: &[PathBuf]) -> Result<Outcome, CliError> {
    let mut reps: Vec<Representation> = Vec::with_capacity(paths.len());
    for p in paths {
        let r = load_rep(ctx, p)?;
        if let Some(first) = reps.first() {
            if !first.same_digroup(&r) {
                return Err(Error::DigroupMismatch.into());
            }
        }
        reps.push(r);
    }
    let found = ext::semisimplicity_probe(&reps)?;
    let d = reps[0].digroup().clone();
    let mut text = String::new();
    let mut witnesses = Vec::new();
    for wit in &found {
        let _ = writeln!(
            text,
            "Ext1({}, {}) has dimension {}",
            paths[wit.quotient].display(),
            paths[wit.sub].display(),
            wit.dim_ext
        );
        witnesses.push(json!({
            "quotient": wit.quotient,
            "sub": wit.sub,
            "dim_ext": wit.dim_ext,
            "cocycle": format::cocycle_to_json(&d, &wit.cocycle),
        }));
    }
    let semisimple = found.is_empty();
    let _ = writeln!(
        text,
        "{}",
        if semisimple {
            "no nonsplit extension among these representations"
        } else {
            "not semisimple"
        }
    );
    Ok(Outcome {
        ok: true,
        text,
        json: json!({ "semisimple_on_inputs": semisimple, "witnesses": witnesses }),
    })
}

/// Writes every file or none: contents are rendered first, then each file is
/// written to a temporary name and renamed into place.
fn write_all(dir: &Path, files: &[(&str, String)]) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Write {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut staged = Vec::new();
    for (name, contents) in files {
        let tmp = dir.join(format!(".{name}.tmp"));
        if let Err(source) = fs::write(&tmp, contents) {
            for (t, _) in &staged {
                let _ = fs::remove_file(t);
            }
            return Err(CliError::Write { path: tmp, source });
        }
        staged.push((tmp, dir.join(name)));
    }
    let mut written = Vec::new();
    for (tmp, dest) in staged {
        fs::rename(&tmp, &dest).map_err(|source| CliError::Write {
            path: dest.clone(),
            source,
        })?;
        written.push(dest);
    }
    Ok(written)
}

fn written_outcome(written: Vec<PathBuf>) -> Outcome {
    let names: Vec<String> = written.iter().map(|p| p.display().to_string()).collect();
    let mut text = String::new();
    for n in &names {
        let _ = writeln!(text, "wrote {n}");
    }
    Outcome {
        ok: true,
        text,
        json: json!({ "written": names }),
    }
}

pub fn example(ctx: &Context, name: &str, out: &Path) -> Result<Outcome, CliError> {
    let (v, basis) = example::named(name, ctx.field_or_rational())?;
    let ses = ShortExactSeq::from_subspace(&v, &basis)?;
    let files = [
        ("digroup.json", format::digroup_to_json(v.digroup())?),
        ("representation.json", format::representation_to_json(&v)?),
        ("sequence.json", format::ses_to_json(&v, &basis)?),
        ("sub.json", format::representation_to_json(ses.sub())?),
        ("quotient.json", format::representation_to_json(ses.quotient())?),
    ];
    Ok(written_outcome(write_all(out, &files)?))
}

pub fn generate(
    ctx: &Context,
    group_order: usize,
    halo_size: usize,
    dim: usize,
    out: &Path,
) -> Result<Outcome, CliError> {
    let mut g = Generator::new(ctx.seed, ctx.field_or_rational());
    let pair = g.pair(group_order, halo_size, dim)?;
    let ses = g.extension(&pair.quotient, &pair.sub)?;
    let basis: Vec<_> = (0..ses.iota().cols()).map(|c| ses.iota().column(c)).collect();
    let files = [
        ("quotient.json", format::representation_to_json(&pair.quotient)?),
        ("sub.json", format::representation_to_json(&pair.sub)?),
        ("extension.json", format::ses_to_json(ses.mid(), &basis)?),
    ];
    Ok(written_outcome(write_all(out, &files)?))
}
