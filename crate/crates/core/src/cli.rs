//! Command plumbing shared by the `wreathkit` binary and the tests: problem
//! loading, dispatch, and rendering of reports as JSON or text.
//!
//! Exit codes: 0 on success or when every check passes, 1 when a
//! verification check fails, 2 on input errors (unreadable or invalid
//! problem, malformed word, word outside `H`, wrong problem kind).

use std::fmt::Write as _;
use std::path::Path;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::action::{
    build_coset_space, rho_of_word, ActionError, CosetSpace, Problem, ProblemError,
};
use crate::fingrp::{Caps, PermGroup, Permutation};
use crate::kurosh::{self, KuroshError, PsiFamily};
use crate::report::CheckList;
use crate::sample;
use crate::schreier::{self, SchreierError};
use crate::words::{FreeWord, ProductWord, WordError};
use crate::wreath::{standard_embed, WreathError, WreathJson};

/// Degree of the symmetric group used as the target `K` by the verify commands.
pub const VERIFY_TARGET_DEGREE: usize = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub caps: Caps,
    pub seed: u64,
    pub samples: usize,
    pub format: Format,
    pub alpha0: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            caps: Caps::default(),
            seed: 0,
            samples: 200,
            format: Format::Json,
            alpha0: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Check,
    NsBasis,
    NsRewrite(String),
    NsVerify,
    KuroshSystem,
    KuroshDecompose,
    KuroshRewrite(String),
    KuroshVerify,
    Embed(String),
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Schreier(#[from] SchreierError),
    #[error(transparent)]
    Kurosh(#[from] KuroshError),
    #[error(transparent)]
    Wreath(#[from] WreathError),
}

/// The result of one command: what to print and the exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn parse_problem(path: &Path) -> Result<Problem, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    Ok(Problem::from_json(&text)?)
}

/// Loads the problem at `path`, runs `command`, and never panics on bad input.
pub fn run(command: &Command, path: &Path, config: &Config) -> Outcome {
    match parse_problem(path).and_then(|p| dispatch(command, &p, config)) {
        Ok((report, passed)) => Outcome {
            code: if passed { 0 } else { 1 },
            stdout: report,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn render<T: Serialize>(value: &T, format: Format, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
            s.push('\n');
            s
        }
        Format::Text => text(),
    }
}

/// Runs `command` on a validated problem, returning the rendered report and
/// whether every check passed.
pub fn dispatch(
    command: &Command,
    problem: &Problem,
    config: &Config,
) -> Result<(String, bool), CliError> {
    let cs = build_coset_space(problem, &config.caps)?;
    let require = |kind: &'static str| -> Result<(), CliError> {
        if problem.kind() == kind {
            Ok(())
        } else {
            Err(ActionError::WrongKind { expected: kind }.into())
        }
    };
    match command {
        Command::Check => Ok((check_report(problem, &cs, config.format), true)),
        Command::NsBasis => {
            require("free_group")?;
            Ok((ns_basis(&cs, config.format)?, true))
        }
        Command::NsRewrite(word) => {
            require("free_group")?;
            Ok((ns_rewrite(&cs, word, config.format)?, true))
        }
        Command::NsVerify => {
            require("free_group")?;
            ns_verify(&cs, config)
        }
        Command::KuroshSystem => {
            require("free_product")?;
            kurosh_system(&cs, config)
        }
        Command::KuroshDecompose => {
            require("free_product")?;
            Ok((kurosh_decompose(&cs, config)?, true))
        }
        Command::KuroshRewrite(word) => {
            require("free_product")?;
            Ok((kurosh_rewrite(&cs, word, config)?, true))
        }
        Command::KuroshVerify => {
            require("free_product")?;
            kurosh_verify(&cs, config)
        }
        Command::Embed(word) => Ok((embed(&cs, word, config)?, true)),
    }
}

#[derive(Serialize)]
struct CheckJson {
    kind: &'static str,
    degree: usize,
    image_order: usize,
    subgroup_order: usize,
    index: usize,
}

fn check_report(problem: &Problem, cs: &CosetSpace, format: Format) -> String {
    let j = CheckJson {
        kind: problem.kind(),
        degree: problem.degree(),
        image_order: cs.image_group().order(),
        subgroup_order: cs.image_subgroup().order(),
        index: cs.size(),
    };
    render(&j, format, || {
        format!(
            "valid {} problem\ndegree         {}\n|Q|            {}\n|S|            {}\nindex          {}\n",
            j.kind, j.degree, j.image_order, j.subgroup_order, j.index
        )
    })
}

#[derive(Serialize)]
struct NsBasisJson {
    transversal: Vec<String>,
    basis: Vec<schreier::BasisEntryJson>,
    rank: usize,
}

fn ns_basis(cs: &CosetSpace, format: Format) -> Result<String, CliError> {
    let alphabet = cs.alphabet()?;
    let t = schreier::build_transversal(cs)?;
    let b = schreier::schreier_basis(cs, &t)?;
    let j = NsBasisJson {
        transversal: t.reps().iter().map(|w| alphabet.render(w)).collect(),
        basis: schreier::basis_json(alphabet, &b),
        rank: b.rank(),
    };
    Ok(render(&j, format, || {
        let mut out = String::new();
        writeln!(out, "index          {}", cs.size()).unwrap();
        writeln!(out, "rank           {}", j.rank).unwrap();
        writeln!(out, "transversal").unwrap();
        for (i, w) in j.transversal.iter().enumerate() {
            writeln!(out, "  {i:>4}  {w}").unwrap();
        }
        writeln!(out, "basis").unwrap();
        for (k, e) in j.basis.iter().enumerate() {
            writeln!(
                out,
                "  b{k} = {}  (coset {}, generator {})",
                e.word, e.coset, e.generator
            )
            .unwrap();
        }
        out
    }))
}

#[derive(Serialize)]
struct NsRewriteJson {
    word: String,
    tokens: String,
    basis: Vec<schreier::BasisEntryJson>,
}

fn ns_rewrite(cs: &CosetSpace, word: &str, format: Format) -> Result<String, CliError> {
    let alphabet = cs.alphabet()?;
    let h = alphabet.parse(word)?;
    let t = schreier::build_transversal(cs)?;
    let b = schreier::schreier_basis(cs, &t)?;
    let tokens = schreier::schreier_rewrite(cs, &b, &h)?;
    let j = NsRewriteJson {
        word: alphabet.render(&h),
        tokens: schreier::render_tokens(&tokens),
        basis: schreier::basis_json(alphabet, &b),
    };
    Ok(render(&j, format, || {
        let mut out = format!("{} = {}\n", j.word, j.tokens);
        for (k, e) in j.basis.iter().enumerate() {
            writeln!(out, "  b{k} = {}", e.word).unwrap();
        }
        out
    }))
}

fn checks_text(title: &str, checks: &CheckList) -> String {
    format!("{title}\n{}", checks.to_text())
}

/// `K = Sym(3)` with `α: B → K` drawn from the seed; also replays the
/// provenance walks and the rewrite round trip on sampled `h ∈ H`.
fn ns_verify(cs: &CosetSpace, config: &Config) -> Result<(String, bool), CliError> {
    let t = schreier::build_transversal(cs)?;
    let b = schreier::schreier_basis(cs, &t)?;
    let k = PermGroup::symmetric(VERIFY_TARGET_DEGREE);
    let mut rng = sample::rng(config.seed);
    let alpha: Vec<Permutation> = (0..b.rank())
        .map(|_| k.element(rng.gen_range(0..k.order())).clone())
        .collect();
    let mut report =
        schreier::verify_ns_universal(cs, &t, &b, &k, &alpha, config.samples, config.seed)?;
    let mut extra = CheckList::new();
    extra.record(
        "transversal is prefix-closed",
        (!t.is_prefix_closed())
            .then(|| "a representative has a prefix outside the transversal".to_string()),
    );
    extra.extend(schreier::check_provenance_walks(cs, &t, &b));
    let mut failure = None;
    for _ in 0..config.samples {
        let h: FreeWord = sample::random_subgroup_element(cs, t.reps(), &mut rng, 12);
        let tokens = schreier::schreier_rewrite(cs, &b, &h)?;
        if schreier::evaluate_tokens(&b, &tokens) != h {
            failure = Some(format!("h = {}", cs.alphabet()?.render(&h)));
            break;
        }
    }
    extra.record(
        format!("rewrite round trip on {} sampled h in H", config.samples),
        failure,
    );
    extra.extend(std::mem::take(&mut report.checks));
    report.checks = extra;
    let passed = report.checks.all_passed();
    let text = || checks_text(&format!("rank {}", report.rank), &report.checks);
    Ok((render(&report, config.format, text), passed))
}

struct KuroshData {
    ks: kurosh::KuroshSystem,
    yz: kurosh::YZTable,
    dec: kurosh::KuroshDecomposition,
}

fn kurosh_data(cs: &CosetSpace, config: &Config) -> Result<KuroshData, CliError> {
    let m = kurosh::syllable_metrics(cs)?;
    let ks = kurosh::build_kurosh_system(cs, &m, config.alpha0.unwrap_or(0))?;
    let yz = kurosh::yz_elements(cs, &ks)?;
    let dec = kurosh::decompose(cs, &ks, &yz)?;
    Ok(KuroshData { ks, yz, dec })
}

#[derive(Serialize)]
struct KuroshSystemReport {
    system: kurosh::SystemJson,
    checks: CheckList,
}

fn kurosh_system(cs: &CosetSpace, config: &Config) -> Result<(String, bool), CliError> {
    let d = kurosh_data(cs, config)?;
    let mut checks = kurosh::check_kurosh_axioms(cs, &d.ks)?;
    checks.extend(kurosh::check_yz(cs, &d.ks, &d.yz)?);
    let report = KuroshSystemReport {
        system: d.ks.to_json(),
        checks,
    };
    let passed = report.checks.all_passed();
    let text = || {
        let mut out = String::new();
        writeln!(out, "alpha0 {}", report.system.alpha0).unwrap();
        for (a, t) in report.system.transversals.iter().enumerate() {
            writeln!(out, "T_{a}").unwrap();
            for (i, w) in t.iter().enumerate() {
                writeln!(out, "  {i:>4}  {w}").unwrap();
            }
        }
        for (a, ds) in report.system.double_cosets.iter().enumerate() {
            writeln!(out, "D_{a}").unwrap();
            for r in ds {
                writeln!(out, "  {}  members {:?}", r.rep, r.members).unwrap();
            }
        }
        out.push_str(&report.checks.to_text());
        out
    };
    Ok((render(&report, config.format, text), passed))
}

fn kurosh_decompose(cs: &CosetSpace, config: &Config) -> Result<String, CliError> {
    let d = kurosh_data(cs, config)?;
    let names = cs.factor_names()?;
    Ok(render(&d.dec.to_json(), config.format, || {
        d.dec.to_text(names)
    }))
}

#[derive(Serialize)]
struct KuroshRewriteJson {
    word: String,
    tokens: Vec<kurosh::KuroshToken>,
    rendered: String,
}

fn kurosh_rewrite(cs: &CosetSpace, word: &str, config: &Config) -> Result<String, CliError> {
    let fp = cs.free_product()?;
    let h = fp.parse(word)?;
    let d = kurosh_data(cs, config)?;
    let tokens = kurosh::kurosh_rewrite(cs, &d.ks, &d.yz, &d.dec, &h)?;
    let j = KuroshRewriteJson {
        word: h.to_string(),
        rendered: kurosh::render_kurosh_tokens(&d.dec, &tokens),
        tokens,
    };
    Ok(render(&j, config.format, || {
        let mut out = format!("{} = {}\n", j.word, j.rendered);
        for (k, z) in d.dec.free_basis.iter().enumerate() {
            writeln!(out, "  z{k} = {}", z.word).unwrap();
        }
        out
    }))
}

#[derive(Serialize)]
struct KuroshVerifyReport {
    alpha0: usize,
    checks: CheckList,
}

/// Axioms, table identities and counts, then `Ψ` over `K = Sym(3)` with a
/// family drawn from the seed, `Ψ̃`, and the rewrite round trip.
fn kurosh_verify(cs: &CosetSpace, config: &Config) -> Result<(String, bool), CliError> {
    let fp = cs.free_product()?;
    let d = kurosh_data(cs, config)?;
    let mut checks = kurosh::check_kurosh_axioms(cs, &d.ks)?;
    checks.extend(kurosh::check_yz(cs, &d.ks, &d.yz)?);
    checks.extend(kurosh::check_decomposition(cs, &d.ks, &d.yz, &d.dec)?);
    let mut rng = sample::rng(config.seed);
    let family = PsiFamily::random(
        &mut rng,
        fp,
        &d.dec,
        PermGroup::symmetric(VERIFY_TARGET_DEGREE),
        &config.caps,
    )?;
    checks.extend(kurosh::verify_kurosh_universal(
        cs,
        &d.ks,
        &d.yz,
        &d.dec,
        &family,
        config.samples,
        config.seed,
        &config.caps,
    )?);
    checks.extend(kurosh::verify_identity_instantiation(
        cs,
        &d.ks,
        &d.yz,
        &d.dec,
        config.samples,
        config.seed,
    )?);
    let mut failure = None;
    for _ in 0..config.samples {
        let h: ProductWord =
            sample::random_subgroup_element(cs, d.ks.transversal(d.ks.alpha0()), &mut rng, 8);
        let tokens = kurosh::kurosh_rewrite(cs, &d.ks, &d.yz, &d.dec, &h)?;
        if kurosh::evaluate_kurosh_tokens(fp, &d.dec, &tokens) != h {
            failure = Some(format!("h = {h}"));
            break;
        }
    }
    checks.record(
        format!("rewrite round trip on {} sampled h in H", config.samples),
        failure,
    );
    let report = KuroshVerifyReport {
        alpha0: d.ks.alpha0(),
        checks,
    };
    let passed = report.checks.all_passed();
    let text = || checks_text(&format!("alpha0 {}", report.alpha0), &report.checks);
    Ok((render(&report, config.format, text), passed))
}

#[derive(Serialize)]
struct EmbedJson {
    word: String,
    transversal: Vec<String>,
    element: WreathJson,
}

/// The standard embedding of `word`, with the Schreier transversal for free
/// groups and `T_α₀` for free products.
fn embed(cs: &CosetSpace, word: &str, config: &Config) -> Result<String, CliError> {
    let j = match cs.alphabet() {
        Ok(alphabet) => {
            let g = alphabet.parse(word)?;
            let t = schreier::build_transversal(cs)?;
            let e = standard_embed(cs, t.reps(), &g)?;
            EmbedJson {
                word: alphabet.render(&g),
                transversal: t.reps().iter().map(|w| alphabet.render(w)).collect(),
                element: e.to_json(|w| alphabet.render(w)),
            }
        }
        Err(_) => {
            let fp = cs.free_product()?;
            let g = fp.parse(word)?;
            let d = kurosh_data(cs, config)?;
            let t = d.ks.transversal(d.ks.alpha0());
            let e = standard_embed(cs, t, &g)?;
            debug_assert_eq!(e.p, rho_of_word(cs, &g)?);
            EmbedJson {
                word: g.to_string(),
                transversal: t.iter().map(ToString::to_string).collect(),
                element: e.to_json(ToString::to_string),
            }
        }
    };
    Ok(render(&j, config.format, || {
        let mut out = format!("{}\n", j.word);
        writeln!(out, "  coset  transversal  f(coset)  coset.rho").unwrap();
        for (i, (t, f)) in j.transversal.iter().zip(&j.element.f).enumerate() {
            writeln!(out, "  {i:>5}  {t:<11}  {f:<8}  {}", j.element.p[i]).unwrap();
        }
        out
    }))
}
