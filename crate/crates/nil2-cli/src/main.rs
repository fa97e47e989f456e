//! Command-line front end.
//!
//! Every subcommand reads and writes the JSON document format from
//! `nil2::doc`. stdout carries the human-readable verdict; `--out` paths
//! receive machine-readable documents. Exit codes: 0 verified/valid,
//! 1 refuted/invalid/not-found (and domain errors), 2 usage or parse errors.

use clap::{Args, Parser, Subcommand};
use nil2::algebra::{
    is_isomorphism, verify_hom, AlgebraPresentation, Element, HomPair, HomVerdict,
};
use nil2::decomp::{search_rank_one_family, verify_certificate, SearchOutcome, SingularFamily};
use nil2::doc::{
    self, algebra_document, certificate_document, document_digest, element_document,
    hompair_document, report_document, DocumentFile,
};
use nil2::extension::{certify_indecomposable, extend, lift_isomorphism};
use nil2::ff::{
    extension_sweep, ff_embedding_family, ff_iso_search, reduce_mod_p, EmbedOutcome, EnumWindow,
    FpHomPair, IsoOutcome, SweepConfig,
};
use nil2::group::{gcommutator, ginv, gmul, groot};
use nil2::rat::{format_rat, parse_rat, rat_int, Rat};
use nil2::sample::{self, Rng64, TColumn};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "nil2",
    version,
    about = "Exact toolkit for class-2 nilpotent Lie algebra presentations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural report: dimensions, skew check, radical, center.
    Info { file: PathBuf },
    /// Write the central double extension of an algebra, with its layout.
    Extend { input: PathBuf, output: PathBuf },
    /// Write the direct sum of two algebras.
    Sum {
        left: PathBuf,
        right: PathBuf,
        output: PathBuf,
    },
    /// Quotient an algebra by a graded ideal.
    Quotient {
        input: PathBuf,
        output: PathBuf,
        /// JSON file {"v_basis": [[..]], "w_basis": [[..]]} spanning the ideal.
        #[arg(long, conflicts_with = "ideal_ut")]
        ideal: Option<PathBuf>,
        /// Use the U + t ideal recorded in the input's layout block.
        #[arg(long)]
        ideal_ut: bool,
    },
    /// Check the bracket-compatibility identity for a hom pair.
    VerifyHom {
        source: PathBuf,
        target: PathBuf,
        hom: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lift an isomorphism of bases to their extensions.
    LiftIso {
        source: PathBuf,
        target: PathBuf,
        hom: PathBuf,
        output: PathBuf,
    },
    /// Verify or search for a decomposability certificate family.
    Certify {
        algebra: PathBuf,
        /// Certificate document with the family to verify.
        #[arg(long, conflicts_with = "search")]
        family: Option<PathBuf>,
        /// Search for a rank-one family instead.
        #[arg(long)]
        search: bool,
        /// Height bound for the sampled functional search.
        #[arg(long, default_value_t = 3)]
        bound: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Indecomposability certificate for an extended algebra (layout required).
    CertifyExt {
        extended: PathBuf,
        /// Sampled center endomorphisms per branch (t moved / t killed).
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Group operations in log-coordinates.
    Group {
        #[command(subcommand)]
        op: GroupOp,
    },
    /// Finite-field brute-force oracle.
    Oracle {
        #[command(subcommand)]
        op: OracleOp,
    },
}

#[derive(Subcommand)]
enum GroupOp {
    /// x * y = x + y + [x,y]/2.
    Mul {
        algebra: PathBuf,
        x: PathBuf,
        y: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Group inverse.
    Inv {
        algebra: PathBuf,
        x: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Group commutator x^-1 y^-1 x y.
    Comm {
        algebra: PathBuf,
        x: PathBuf,
        y: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The unique k-th root.
    Root {
        algebra: PathBuf,
        x: PathBuf,
        k: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct OracleCommon {
    #[arg(long)]
    prime: u64,
    /// Hard operation-count cap; never time-based.
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    /// Recorded in the report for provenance; the exhaustive searches make
    /// no randomized choices.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum OracleOp {
    /// Exhaustive isomorphism search mod p between two algebra files.
    Iso {
        left: PathBuf,
        right: PathBuf,
        /// Resume the enumeration from this pair index.
        #[arg(long, default_value_t = 0)]
        start: u128,
        #[command(flatten)]
        common: OracleCommon,
    },
    /// Search for a separating family of homomorphisms mod p.
    Embed {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_family: usize,
        #[command(flatten)]
        common: OracleCommon,
    },
    /// Sweep all shapes (n, m) mod p checking the extension biconditional.
    Sweep {
        #[arg(long = "dim-v")]
        n: usize,
        #[arg(long = "dim-w")]
        m: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[command(flatten)]
        common: OracleCommon,
    },
}

/// Failure carrying its exit code: 2 for parse/usage, 1 for domain errors.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn domain(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

type CliResult = Result<u8, Failure>;

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> Result<(), Failure> {
    std::fs::write(path, content)
        .map_err(|e| Failure::domain(format!("cannot write {}: {e}", path.display())))
}

fn load_document(path: &Path) -> Result<DocumentFile, Failure> {
    let text = read_file(path)?;
    doc::parse_document(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn load_algebra(
    path: &Path,
) -> Result<(AlgebraPresentation, Option<doc::LayoutDoc>, String), Failure> {
    let document = load_document(path)?;
    let (p, layout) = doc::decode_algebra(&document)
        .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    Ok((p, layout, document_digest(&document)))
}

fn load_element(path: &Path, p: &AlgebraPresentation) -> Result<Element, Failure> {
    let document = load_document(path)?;
    let (n, m, e) = doc::decode_element(&document)
        .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    if n != p.n() || m != p.m() {
        return Err(Failure::domain(format!(
            "element shape ({n}, {m}) does not fit the algebra ({}, {})",
            p.n(),
            p.m()
        )));
    }
    Ok(e)
}

fn load_hom(path: &Path) -> Result<(doc::HomPairDoc, HomPair, String), Failure> {
    let document = load_document(path)?;
    let (meta, hom) = doc::decode_hompair(&document)
        .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    Ok((meta, hom, document_digest(&document)))
}

fn write_report(out: &Option<PathBuf>, report: serde_json::Value) -> Result<(), Failure> {
    if let Some(path) = out {
        let document = report_document(report);
        write_file(path, &doc::serialize_document(&document))?;
    }
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn element_line(e: &Element) -> String {
    let v: Vec<String> = e.v.iter().map(format_rat).collect();
    let w: Vec<String> = e.w.iter().map(format_rat).collect();
    format!("v = [{}], w = [{}]", v.join(", "), w.join(", "))
}

fn cmd_info(file: &Path) -> CliResult {
    let (p, layout, _) = load_algebra(file)?;
    println!("label: {}", p.label.as_deref().unwrap_or("(none)"));
    println!("n: {}", p.n());
    println!("m: {}", p.m());
    if let Err(v) = p.validate() {
        println!("skew: violation at form {}, ({}, {})", v.form, v.row, v.col);
        return Err(Failure::parse(format!("invalid presentation: {v}")));
    }
    println!("skew: ok");
    let ker = p.ker_omega();
    println!("dim ker omega: {}", ker.len());
    let nonsingular = ker.is_empty();
    println!("nonsingular: {}", yes_no(nonsingular));
    println!("surjective: {}", yes_no(p.is_surjective()));
    println!("[L,L]=Z(L): {}", yes_no(p.commutator_equals_center()));
    if !nonsingular {
        println!(
            "note: omega is singular; the two conditions are only equivalent for nonsingular omega"
        );
    }
    println!("center dim: {}", p.center().len());
    if layout.is_some() {
        println!("layout: extension block recorded");
    }
    Ok(0)
}

fn cmd_extend(input: &Path, output: &Path) -> CliResult {
    let (p, _, _) = load_algebra(input)?;
    let (ext, layout) = extend(&p);
    let document = algebra_document(&ext, Some(&layout));
    write_file(output, &doc::serialize_document(&document))?;
    println!(
        "extended ({}, {}) -> ({}, {})",
        p.n(),
        p.m(),
        ext.n(),
        ext.m()
    );
    Ok(0)
}

fn cmd_sum(left: &Path, right: &Path, output: &Path) -> CliResult {
    let (a, _, _) = load_algebra(left)?;
    let (b, _, _) = load_algebra(right)?;
    let s = a.direct_sum(&b);
    write_file(
        output,
        &doc::serialize_document(&algebra_document(&s, None)),
    )?;
    println!("sum has n = {}, m = {}", s.n(), s.m());
    Ok(0)
}

type Basis = Vec<Vec<Rat>>;

#[derive(serde::Deserialize)]
struct IdealSpec {
    v_basis: Vec<Vec<String>>,
    w_basis: Vec<Vec<String>>,
}

fn parse_ideal(path: &Path, n: usize, m: usize) -> Result<(Basis, Basis), Failure> {
    let text = read_file(path)?;
    let spec: IdealSpec = serde_json::from_str(&text)
        .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    let parse_side = |rows: &[Vec<String>], dim: usize, name: &str| {
        rows.iter()
            .enumerate()
            .map(|(i, row)| {
                if row.len() != dim {
                    return Err(Failure::parse(format!(
                        "{name}[{i}]: expected {dim} entries, found {}",
                        row.len()
                    )));
                }
                row.iter()
                    .enumerate()
                    .map(|(j, s)| {
                        parse_rat(s).map_err(|e| Failure::parse(format!("{name}[{i}][{j}]: {e}")))
                    })
                    .collect::<Result<Vec<Rat>, Failure>>()
            })
            .collect::<Result<Vec<Vec<Rat>>, Failure>>()
    };
    Ok((
        parse_side(&spec.v_basis, n, "v_basis")?,
        parse_side(&spec.w_basis, m, "w_basis")?,
    ))
}

fn cmd_quotient(input: &Path, output: &Path, ideal: Option<&PathBuf>, ideal_ut: bool) -> CliResult {
    let (p, layout, _) = load_algebra(input)?;
    let (v_basis, w_basis) = if ideal_ut {
        let Some(layout) = layout else {
            return Err(Failure::parse(
                "--ideal-ut needs a layout block in the input document",
            ));
        };
        let mut v_basis = Vec::new();
        for &i in &layout.u {
            if i >= p.n() {
                return Err(Failure::parse(format!("layout u index {i} out of range")));
            }
            let mut v = vec![rat_int(0); p.n()];
            v[i] = rat_int(1);
            v_basis.push(v);
        }
        if layout.t >= p.m() {
            return Err(Failure::parse(format!(
                "layout t index {} out of range",
                layout.t
            )));
        }
        let mut t = vec![rat_int(0); p.m()];
        t[layout.t] = rat_int(1);
        (v_basis, vec![t])
    } else {
        let Some(path) = ideal else {
            return Err(Failure::parse("quotient needs --ideal FILE or --ideal-ut"));
        };
        parse_ideal(path, p.n(), p.m())?
    };
    let q = p
        .quotient_by_graded_ideal(&v_basis, &w_basis)
        .map_err(|e| Failure::domain(e.to_string()))?;
    write_file(
        output,
        &doc::serialize_document(&algebra_document(&q, None)),
    )?;
    println!("quotient has n = {}, m = {}", q.n(), q.m());
    Ok(0)
}

fn cmd_verify_hom(source: &Path, target: &Path, hom: &Path, out: &Option<PathBuf>) -> CliResult {
    let (src, _, src_digest) = load_algebra(source)?;
    let (dst, _, dst_digest) = load_algebra(target)?;
    let (_, h, hom_digest) = load_hom(hom)?;
    let verdict = verify_hom(&src, &dst, &h).map_err(|e| Failure::domain(e.to_string()))?;
    let iso = is_isomorphism(&src, &dst, &h);
    let (ok, detail) = match &verdict {
        HomVerdict::Verified => (true, "bracket identity holds".to_owned()),
        HomVerdict::Mismatch { form, row, col } => (
            false,
            format!("first mismatch at form {form}, entry ({row}, {col})"),
        ),
    };
    println!("hom: {}", if ok { "verified" } else { "refuted" });
    println!("{detail}");
    println!("isomorphism: {}", yes_no(iso));
    write_report(
        out,
        json!({
            "type": "verify-hom",
            "inputs": { "source": src_digest, "target": dst_digest, "hom": hom_digest },
            "verified": ok,
            "isomorphism": iso,
            "detail": detail,
        }),
    )?;
    Ok(if ok { 0 } else { 1 })
}

fn cmd_lift_iso(source: &Path, target: &Path, hom: &Path, output: &Path) -> CliResult {
    let (src, _, _) = load_algebra(source)?;
    let (dst, _, _) = load_algebra(target)?;
    let (_, h, _) = load_hom(hom)?;
    let lifted = lift_isomorphism(&src, &dst, &h).map_err(|e| Failure::domain(e.to_string()))?;
    let document = hompair_document(
        (2 * src.n(), src.m() + 1),
        (2 * dst.n(), dst.m() + 1),
        &lifted,
    );
    write_file(output, &doc::serialize_document(&document))?;
    println!(
        "lifted isomorphism written; extended shapes ({}, {}) -> ({}, {})",
        2 * src.n(),
        src.m() + 1,
        2 * dst.n(),
        dst.m() + 1
    );
    Ok(0)
}

fn family_json(family: &SingularFamily) -> serde_json::Value {
    json!(family
        .members
        .iter()
        .map(|m| (0..m.rows())
            .map(|i| (0..m.cols())
                .map(|j| format_rat(m.at(i, j)))
                .collect::<Vec<_>>())
            .collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn cmd_certify(
    algebra: &Path,
    family: Option<&PathBuf>,
    search: bool,
    bound: u64,
    out: &Option<PathBuf>,
) -> CliResult {
    let (p, _, algebra_digest) = load_algebra(algebra)?;
    if let Some(family_path) = family {
        let document = load_document(family_path)?;
        let (fam, bound_digest) = doc::decode_certificate(&document)
            .map_err(|e| Failure::parse(format!("{}: {e}", family_path.display())))?;
        if let Some(expected) = &bound_digest {
            if expected != &algebra_digest {
                println!("certificate is bound to a different algebra document");
                return Ok(1);
            }
        }
        let report = verify_certificate(&p, &fam).map_err(|e| Failure::domain(e.to_string()))?;
        let valid = report.is_valid();
        println!(
            "certificate: {}",
            if valid {
                "valid (necessary condition for decomposability holds)"
            } else {
                "invalid"
            }
        );
        println!(
            "member kernel dims: {:?}, joint kernel dim: {}",
            report.per_member_kernel_dims, report.joint_kernel_dim
        );
        write_report(
            out,
            json!({
                "type": "certify",
                "inputs": { "algebra": algebra_digest },
                "mode": "verify",
                "valid": valid,
                "family": family_json(&report.family),
                "member_kernel_dims": report.per_member_kernel_dims,
                "joint_kernel_dim": report.joint_kernel_dim,
            }),
        )?;
        Ok(if valid { 0 } else { 1 })
    } else if search {
        match search_rank_one_family(&p, bound).map_err(|e| Failure::domain(e.to_string()))? {
            SearchOutcome::Found(report) => {
                println!(
                    "certificate found: {} rank-one members",
                    report.family.members.len()
                );
                println!("necessary condition for decomposability holds");
                if let Some(path) = out {
                    let document =
                        certificate_document(p.m(), &report.family, Some(algebra_digest.clone()));
                    write_file(path, &doc::serialize_document(&document))?;
                }
                Ok(0)
            }
            SearchOutcome::NotFound {
                complete_for_rank_one,
            } => {
                if complete_for_rank_one {
                    println!("no rank-one certificate exists (search complete for rank-one maps)");
                } else {
                    println!("no certificate found within bound {bound} (inconclusive)");
                }
                write_report(
                    out,
                    json!({
                        "type": "certify",
                        "inputs": { "algebra": algebra_digest },
                        "mode": "search",
                        "found": false,
                        "complete_for_rank_one": complete_for_rank_one,
                    }),
                )?;
                Ok(1)
            }
        }
    } else {
        Err(Failure::parse("certify needs --family FILE or --search"))
    }
}

fn cmd_certify_ext(extended: &Path, samples: usize, seed: u64, out: &Option<PathBuf>) -> CliResult {
    let (ext, layout_doc, digest) = load_algebra(extended)?;
    let Some(layout_doc) = layout_doc else {
        return Err(Failure::parse(
            "certify-ext needs an extended algebra with a layout block",
        ));
    };
    let layout = doc::layout_from_doc(&ext, &layout_doc)
        .map_err(|e| Failure::parse(format!("{}: {e}", extended.display())))?;
    let mut rng = Rng64::new(seed);
    let mut endos: Vec<_> = (0..samples)
        .map(|_| sample::extended_w_endo(&mut rng, ext.m(), 5, TColumn::NonZero))
        .collect();
    endos
        .extend((0..samples).map(|_| sample::extended_w_endo(&mut rng, ext.m(), 5, TColumn::Zero)));
    let report = certify_indecomposable(&ext, &layout, &endos)
        .map_err(|e| Failure::domain(e.to_string()))?;
    let ok = report.structure_ok && report.all_hold;
    let moving = report.samples.iter().filter(|s| s.psi_t_nonzero).count();
    println!(
        "pairing block structure: {}",
        if report.structure_ok {
            "ok"
        } else {
            "violated"
        }
    );
    println!(
        "samples: {} moving t (all trivial kernel: {}), {} killing t (vacuous)",
        moving,
        yes_no(report.samples.iter().all(|s| s.holds)),
        report.samples.len() - moving
    );
    println!(
        "indecomposability certificate: {}",
        if ok { "holds" } else { "failed" }
    );
    write_report(
        out,
        json!({
            "type": "certify-ext",
            "inputs": { "extended": digest },
            "seed": seed,
            "structure_ok": report.structure_ok,
            "samples_total": report.samples.len(),
            "samples_moving_t": moving,
            "all_hold": report.all_hold,
        }),
    )?;
    Ok(if ok { 0 } else { 1 })
}

fn cmd_group(op: &GroupOp) -> CliResult {
    let (algebra, out, result) = match op {
        GroupOp::Mul { algebra, x, y, out } => {
            let (p, _, _) = load_algebra(algebra)?;
            let a = load_element(x, &p)?;
            let b = load_element(y, &p)?;
            let r = gmul(&p, &a, &b).map_err(|e| Failure::domain(e.to_string()))?;
            (p, out, r)
        }
        GroupOp::Inv { algebra, x, out } => {
            let (p, _, _) = load_algebra(algebra)?;
            let a = load_element(x, &p)?;
            let r = ginv(&p, &a);
            (p, out, r)
        }
        GroupOp::Comm { algebra, x, y, out } => {
            let (p, _, _) = load_algebra(algebra)?;
            let a = load_element(x, &p)?;
            let b = load_element(y, &p)?;
            let r = gcommutator(&p, &a, &b).map_err(|e| Failure::domain(e.to_string()))?;
            (p, out, r)
        }
        GroupOp::Root { algebra, x, k, out } => {
            if *k == 0 {
                return Err(Failure::parse("root exponent must be positive"));
            }
            let (p, _, _) = load_algebra(algebra)?;
            let a = load_element(x, &p)?;
            let r = groot(&p, &a, *k).map_err(|e| Failure::domain(e.to_string()))?;
            (p, out, r)
        }
    };
    println!("{}", element_line(&result));
    if let Some(path) = out {
        let document = element_document(algebra.n(), algebra.m(), &result);
        write_file(path, &doc::serialize_document(&document))?;
    }
    Ok(0)
}

fn witness_json(w: &FpHomPair) -> serde_json::Value {
    let dump = |m: &nil2::ff::FpMat| {
        (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m.at(i, j)).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    };
    json!({ "f": dump(&w.f), "psi": dump(&w.psi) })
}

fn cmd_oracle(op: &OracleOp) -> CliResult {
    match op {
        OracleOp::Iso {
            left,
            right,
            start,
            common,
        } => {
            let (a, _, da) = load_algebra(left)?;
            let (b, _, db) = load_algebra(right)?;
            let qa = reduce_mod_p(&a, common.prime).map_err(|e| Failure::domain(e.to_string()))?;
            let qb = reduce_mod_p(&b, common.prime).map_err(|e| Failure::domain(e.to_string()))?;
            let outcome = ff_iso_search(
                &qa,
                &qb,
                EnumWindow {
                    start: *start,
                    budget: common.budget,
                },
            )
            .map_err(|e| Failure::domain(e.to_string()))?;
            let (code, verdict, witness) = match &outcome {
                IsoOutcome::Witness(w) => (0u8, "isomorphic mod p", Some(witness_json(w))),
                IsoOutcome::NoneExists => (1, "no isomorphism mod p (exhaustive)", None),
            };
            println!("{verdict}");
            write_report(
                &common.out,
                json!({
                    "type": "oracle-iso",
                    "inputs": { "left": da, "right": db },
                    "prime": common.prime,
                    "seed": common.seed,
                    "witness": witness,
                }),
            )?;
            Ok(code)
        }
        OracleOp::Embed {
            left,
            right,
            max_family,
            common,
        } => {
            let (a, _, da) = load_algebra(left)?;
            let (b, _, db) = load_algebra(right)?;
            let qa = reduce_mod_p(&a, common.prime).map_err(|e| Failure::domain(e.to_string()))?;
            let qb = reduce_mod_p(&b, common.prime).map_err(|e| Failure::domain(e.to_string()))?;
            let outcome = ff_embedding_family(&qa, &qb, *max_family, common.budget)
                .map_err(|e| Failure::domain(e.to_string()))?;
            let (code, family) = match &outcome {
                EmbedOutcome::Family(f) => (0u8, Some(f)),
                EmbedOutcome::NoneExists => (1, None),
            };
            match &family {
                Some(f) => println!("separating family of {} homomorphisms mod p", f.len()),
                None => println!("no separating family mod p (exhaustive)"),
            }
            write_report(
                &common.out,
                json!({
                    "type": "oracle-embed",
                    "inputs": { "left": da, "right": db },
                    "prime": common.prime,
                    "seed": common.seed,
                    "family": family.map(|f| f.iter().map(witness_json).collect::<Vec<_>>()),
                }),
            )?;
            Ok(code)
        }
        OracleOp::Sweep {
            n,
            m,
            workers,
            common,
        } => {
            let report = extension_sweep(SweepConfig {
                n: *n,
                m: *m,
                p: common.prime,
                budget: common.budget,
                workers: *workers,
            })
            .map_err(|e| Failure::domain(e.to_string()))?;
            println!(
                "sweep n={} m={} p={}: {} presentations, {} pairs, {} violations",
                n,
                m,
                common.prime,
                report.presentation_count,
                report.pairs.len(),
                report.violations.len()
            );
            let pairs: Vec<serde_json::Value> = report
                .pairs
                .iter()
                .map(|r| {
                    json!({
                        "index": r.index,
                        "left": r.left_presentation,
                        "right": r.right_presentation,
                        "base_isomorphic": r.base_witness.is_some(),
                        "ext_isomorphic": r.ext_witness.is_some(),
                        "witness_lifted": r.lifted,
                        "base_witness": r.base_witness.as_ref().map(witness_json),
                        "ext_witness": r.ext_witness.as_ref().map(witness_json),
                        "violation": r.violation.map(|v| format!("{v:?}")),
                    })
                })
                .collect();
            write_report(
                &common.out,
                json!({
                    "type": "oracle-sweep",
                    "prime": common.prime,
                    "n": n,
                    "m": m,
                    "seed": common.seed,
                    "presentations": report.presentation_count,
                    "pairs": pairs,
                    "violations": report.violations,
                }),
            )?;
            Ok(if report.violations.is_empty() { 0 } else { 1 })
        }
    }
}

fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Info { file } => cmd_info(file),
        Command::Extend { input, output } => cmd_extend(input, output),
        Command::Sum {
            left,
            right,
            output,
        } => cmd_sum(left, right, output),
        Command::Quotient {
            input,
            output,
            ideal,
            ideal_ut,
        } => cmd_quotient(input, output, ideal.as_ref(), *ideal_ut),
        Command::VerifyHom {
            source,
            target,
            hom,
            out,
        } => cmd_verify_hom(source, target, hom, out),
        Command::LiftIso {
            source,
            target,
            hom,
            output,
        } => cmd_lift_iso(source, target, hom, output),
        Command::Certify {
            algebra,
            family,
            search,
            bound,
            out,
        } => cmd_certify(algebra, family.as_ref(), *search, *bound, out),
        Command::CertifyExt {
            extended,
            samples,
            seed,
            out,
        } => cmd_certify_ext(extended, *samples, *seed, out),
        Command::Group { op } => cmd_group(op),
        Command::Oracle { op } => cmd_oracle(op),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
