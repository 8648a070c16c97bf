use kite_core::embed::{check_congruence, check_embedding, Embedding, EmbeddingKind, FactorFamily, TruncatedProduct};
use kite_core::frame::{classify, enumerate_frames, Frame};
use kite_core::hom::{check_hom, composition_check, lemma_checks, FrameTransformation};
use kite_core::kite::{
    axiom_suite, decomposition_check, divisibility_search, is_si_kite, prelinearity_transfer_check, ElementSpace, Kite,
};
use kite_core::report::{Report, RunConfig, Status};
use kite_core::reslat::{enumerate_residuated_lattices, Identity};
use serde_json::json;

use crate::resolve::Resolver;
use crate::{Command, EmbedChoice, EnumKind, ExportKind};

pub fn run(cmd: &Command, ctx: &Resolver, cfg: RunConfig) -> Result<Report, String> {
    match cmd {
        Command::VerifyLattice { lattice } => verify_lattice(ctx, cfg, lattice),
        Command::ClassifyFrame { frame, lattice } => classify_frame(ctx, cfg, frame, lattice.as_deref()),
        Command::KiteCheck { lattice, frame } => kite_check(ctx, cfg, lattice, frame),
        Command::SiCheck { lattice, frame } => si_check(ctx, cfg, lattice, frame),
        Command::Decompose { lattice, frame } => decompose(ctx, cfg, lattice, frame),
        Command::EmbedCheck { lattice, embedding } => embed_check(ctx, cfg, lattice, *embedding),
        Command::HomCheck {
            map,
            source,
            target,
            lattice,
            lemma_depth,
            then,
        } => hom_check(
            ctx,
            cfg,
            map,
            source.as_deref(),
            target.as_deref(),
            lattice,
            *lemma_depth,
            then.as_deref(),
        ),
        Command::Enumerate { kind, n } => enumerate(cfg, *kind, *n),
        Command::Export { .. } => Err("export writes a file, not a report".into()),
    }
}

fn finite_kite(ctx: &Resolver, lattice: &str, frame: &str) -> Result<Kite, String> {
    let g = ctx.valid_lattice(lattice)?;
    match ctx.frame(frame)? {
        Frame::Finite(f) => Ok(Kite::new(g, f)),
        Frame::Symbolic(k) => Err(format!(
            "{frame} is the infinite frame {}; this command needs a finite frame",
            k.name()
        )),
    }
}

fn verify_lattice(ctx: &Resolver, cfg: RunConfig, lattice: &str) -> Result<Report, String> {
    let g = ctx.lattice(lattice)?;
    let mut r = Report::new("verify-lattice", cfg);
    r.input("lattice", lattice);
    let axioms = g.verify_axioms();
    for o in &axioms.outcomes {
        let summary = match &o.witness {
            None => "holds".to_string(),
            Some(w) => format!("fails at {w:?}"),
        };
        r.verdict(&format!("{:?}", o.law), o.passed(), false, summary, o);
    }
    if axioms.passed() {
        let class = g.classify_algebra();
        let flags: Vec<&str> = [
            ("GBL", class.gbl),
            ("basic pseudo-hoop", class.basic_pseudo_hoop),
            ("pseudo-BL", class.pseudo_bl),
            ("BL", class.bl),
            ("pseudo-MV", class.pseudo_mv),
            ("MV", class.mv),
            ("commutative", class.commutative),
        ]
        .into_iter()
        .filter_map(|(n, b)| b.then_some(n))
        .collect();
        let summary = if flags.is_empty() {
            "integral residuated lattice".into()
        } else {
            flags.join(", ")
        };
        r.push("classification", Status::Info, summary, class);
        let si = g.is_subdirectly_irreducible();
        r.push(
            "subdirectly irreducible",
            Status::Info,
            si.irreducible.to_string(),
            json!({"irreducible": si.irreducible, "trivial": si.trivial}),
        );
    }
    Ok(r)
}

fn classify_frame(ctx: &Resolver, cfg: RunConfig, frame: &str, lattice: Option<&str>) -> Result<Report, String> {
    let f = ctx.frame(frame)?;
    let g_trivial = match lattice {
        Some(l) => ctx.valid_lattice(l)?.is_trivial(),
        None => false,
    };
    let c = classify(&f, g_trivial);
    let mut r = Report::new("classify-frame", cfg);
    r.input("frame", frame);
    r.push("shape", Status::Info, format!("{:?}", c.tag), &c);
    if let (Frame::Finite(ff), Some(rep)) = (&f, c.tag.representative()) {
        let ok = rep.as_finite().ok().and_then(|rf| ff.isomorphism_to(rf)).is_some();
        r.verdict("witness", ok, false, "relabeling onto the representative", &c.witness);
    }
    Ok(r)
}

fn kite_check(ctx: &Resolver, cfg: RunConfig, lattice: &str, frame: &str) -> Result<Report, String> {
    let k = finite_kite(ctx, lattice, frame)?;
    let budget = cfg.run_budget();
    let mut r = Report::new("kite-check", cfg);
    r.input("lattice", lattice);
    r.input("frame", frame);
    for law in axiom_suite(&k, &budget).map_err(|e| e.to_string())? {
        let mode = if law.exhaustive { "exhaustive" } else { "sampled" };
        let summary = format!(
            "{} violations in {} of {} {mode} tuples (coverage {:.3})",
            law.violations,
            law.checked,
            law.planned,
            law.coverage()
        );
        r.verdict(&law.law, law.passed(), law.truncated(), summary, &law);
    }
    let p = prelinearity_transfer_check(&k, &budget).map_err(|e| e.to_string())?;
    let summary = format!(
        "lattice {}prelinear, kite {} ({} pairs)",
        if p.lattice_prelinear { "" } else { "not " },
        if p.pairs.passed() && !p.constant_probe_fails {
            "prelinear on checked pairs"
        } else {
            "not prelinear"
        },
        p.pairs.checked
    );
    r.verdict("prelinearity transfer", p.agrees, p.pairs.truncated(), summary, &p);
    let pairs = ElementSpace::new(&k, budget.depth).count().saturating_pow(2);
    if pairs <= budget.budget as u128 {
        let divisible = k.lattice().satisfies(Identity::Divisibility);
        let w = divisibility_search(&k, budget.depth).map_err(|e| e.to_string())?;
        let summary = match &w {
            Some(w) => format!("kite not divisible: {} with x = {}, y = {}", w.side, w.x, w.y),
            None => "kite divisible on all pairs".into(),
        };
        let summary = format!("lattice {}divisible; {summary}", if divisible { "" } else { "not " });
        r.push("divisibility", Status::Info, summary, &w);
    } else {
        r.push(
            "divisibility",
            Status::Info,
            format!("skipped: {pairs} pairs exceed the budget"),
            (),
        );
    }
    Ok(r)
}

fn si_check(ctx: &Resolver, cfg: RunConfig, lattice: &str, frame: &str) -> Result<Report, String> {
    let g = ctx.valid_lattice(lattice)?;
    let f = ctx.frame(frame)?;
    let v = is_si_kite(&g, &f);
    let c = classify(&f, g.is_trivial());
    let mut r = Report::new("si-check", cfg);
    r.input("lattice", lattice);
    r.input("frame", frame);
    let summary = format!(
        "{} ({:?})",
        if v.si {
            "subdirectly irreducible"
        } else {
            "not subdirectly irreducible"
        },
        v.reason
    );
    r.push("verdict", Status::Info, summary, &v);
    // the connectivity verdict and the shape classification must agree
    let lattice_si = g.is_subdirectly_irreducible().irreducible;
    let consistent = g.is_trivial() || !lattice_si || v.si == c.tag.is_si_family();
    r.verdict("agrees with frame shape", consistent, false, format!("{:?}", c.tag), &c);
    Ok(r)
}

fn decompose(ctx: &Resolver, cfg: RunConfig, lattice: &str, frame: &str) -> Result<Report, String> {
    let k = finite_kite(ctx, lattice, frame)?;
    let d = decomposition_check(&k, &cfg.run_budget()).map_err(|e| e.to_string())?;
    let mut r = Report::new("decompose", cfg);
    r.input("lattice", lattice);
    r.input("frame", frame);
    for (i, c) in d.components.iter().enumerate() {
        let ok = c.axioms.iter().all(|l| l.passed());
        let truncated = c.axioms.iter().any(|l| l.truncated());
        r.verdict(
            &format!("component {i}"),
            ok,
            truncated,
            format!("indices {:?}", c.indices),
            c,
        );
    }
    let summary = format!("{} of {} distinct pairs separated", d.separated, d.pairs);
    let sep_ok = d.pairs > 0 && d.separated == d.pairs;
    r.verdict(
        "separation",
        sep_ok,
        false,
        summary,
        json!({"pairs": d.pairs, "separated": d.separated, "first_unseparated": d.first_unseparated}),
    );
    Ok(r)
}

fn embed_check(ctx: &Resolver, cfg: RunConfig, lattice: &str, which: EmbedChoice) -> Result<Report, String> {
    let g = ctx.valid_lattice(lattice)?;
    let ecfg = cfg.embed_config();
    let truncated = cfg.samples > cfg.budget;
    let kinds: Vec<EmbeddingKind> = match which {
        EmbedChoice::Phi1 => vec![EmbeddingKind::Phi1],
        EmbedChoice::Phi2 => vec![EmbeddingKind::Phi2],
        EmbedChoice::Phi3 => vec![EmbeddingKind::Phi3],
        EmbedChoice::All => EmbeddingKind::ALL.to_vec(),
    };
    let mut r = Report::new("embed-check", cfg);
    r.input("lattice", lattice);
    for kind in kinds {
        let emb = Embedding::new(kind, g.clone(), ecfg.k_max);
        let rep = check_embedding(&emb, &ecfg).map_err(|e| e.to_string())?;
        if kind == EmbeddingKind::Phi2 {
            r.push(
                "phi2 convention",
                Status::Info,
                format!(
                    "entry at residue i of factor k is x at the representative of i + {}",
                    rep.offset
                ),
                json!({"offset": rep.offset}),
            );
        }
        for op in rep.ops.iter().chain([&rep.injectivity]) {
            let mode = op.modulo.as_deref().unwrap_or("exact");
            let summary = format!("{} failures in {} ({mode})", op.failures, op.checked);
            r.verdict(
                &format!("{} {}", kind.name(), op.name),
                op.passed(),
                truncated,
                summary,
                op,
            );
        }
        for op in &rep.wrap_free {
            let summary = format!(
                "{} failures in {} on factors without wrap-around",
                op.failures, op.checked
            );
            r.verdict(
                &format!("{} {} (wrap-free)", kind.name(), op.name),
                op.passed(),
                truncated,
                summary,
                op,
            );
        }
        if kind.family() != FactorFamily::Cycle {
            let product = TruncatedProduct::new(kind.family(), g.clone(), ecfg.k_max);
            let c = check_congruence(&product, &ecfg).map_err(|e| e.to_string())?;
            let checked: u64 = c.laws.iter().map(|l| l.checked).sum();
            let failures: u64 = c.laws.iter().map(|l| l.failures).sum();
            let summary = format!("{failures} failures in {checked} composed witnesses");
            r.verdict(
                &format!("{} congruence", kind.name()),
                c.passed(),
                truncated,
                summary,
                &c,
            );
        }
    }
    Ok(r)
}

#[allow(clippy::too_many_arguments)]
fn hom_check(
    ctx: &Resolver,
    cfg: RunConfig,
    map: &str,
    source: Option<&str>,
    target: Option<&str>,
    lattice: &str,
    lemma_depth: usize,
    then: Option<&str>,
) -> Result<Report, String> {
    let g = ctx.valid_lattice(lattice)?;
    let file = ctx.map(map)?;
    let src = match source {
        Some(s) => ctx.frame(s)?,
        None => ctx.frame_near(&file.source, map)?,
    };
    let tgt = match target {
        Some(t) => ctx.frame(t)?,
        None => ctx.frame_near(&file.target, map)?,
    };
    let t = FrameTransformation::new(src, tgt, file.map.clone()).map_err(|e| e.to_string())?;
    let mut r = Report::new("hom-check", cfg);
    r.input("map", map);
    r.input("t", t.map().to_string());
    r.input("lattice", lattice);
    let violations = t.violations();
    for c in kite_core::hom::Condition::ALL {
        let first = violations.iter().find(|v| v.condition == c);
        let summary = match first {
            None => "holds".to_string(),
            Some(v) => format!("fails at {}: {}", v.index, v.detail),
        };
        r.verdict(
            &format!("condition {}", c.name()),
            first.is_none(),
            false,
            summary,
            first,
        );
    }
    if violations.is_empty() {
        let lemmas = lemma_checks(&t, lemma_depth);
        for l in &lemmas.lemmas {
            let summary = format!("{} failures in {} up to depth {lemma_depth}", l.failures, l.checked);
            r.verdict(&l.lemma, l.failures == 0, false, summary, l);
        }
    }
    match check_hom(&t, &g, &cfg.run_budget()) {
        Ok(h) => {
            let mode = if h.exhaustive { "exhaustive" } else { "sampled" };
            for op in &h.ops {
                let summary = format!("{} failures in {} {mode}", op.failures, op.checked);
                r.verdict(
                    &format!("preserves {}", op.op),
                    op.failures == 0,
                    h.truncated(),
                    summary,
                    op,
                );
            }
            let summary = format!("{} of {} inputs have undefined images", h.undefined, h.checked);
            r.verdict(
                "well-defined",
                h.undefined == 0,
                h.truncated(),
                summary,
                json!({"undefined": h.undefined}),
            );
        }
        Err(e) => r.push("preservation", Status::Info, format!("not checked: {e}"), ()),
    }
    if let Some(next) = then {
        let nf = ctx.map(next)?;
        let s_src = t.target().clone();
        let s_tgt = ctx.frame_near(&nf.target, next)?;
        let s = FrameTransformation::new(s_src, s_tgt, nf.map).map_err(|e| e.to_string())?;
        let c = composition_check(&t, &s, &g, &cfg.run_budget()).map_err(|e| e.to_string())?;
        let summary = format!(
            "composite {} a transformation; induced maps {} on {} elements",
            if c.composite_is_transformation { "is" } else { "is not" },
            if c.contravariant() {
                "compose contravariantly"
            } else {
                "disagree"
            },
            c.checked
        );
        r.push("composition", Status::Info, summary, &c);
    }
    Ok(r)
}

fn enumerate(cfg: RunConfig, kind: EnumKind, n: usize) -> Result<Report, String> {
    let mut r = Report::new("enumerate", cfg);
    r.input("n", n.to_string());
    match kind {
        EnumKind::Lattices => {
            let all = enumerate_residuated_lattices(n).map_err(|e| e.to_string())?;
            r.input("kind", "lattices");
            for (i, l) in all.iter().enumerate() {
                let flags = json!({
                    "commutative": l.satisfies(Identity::Commutativity),
                    "divisible": l.satisfies(Identity::Divisibility),
                    "prelinear": l.satisfies(Identity::Prelinearity),
                    "subdirectly_irreducible": l.is_subdirectly_irreducible().irreducible,
                    "mul": l.table(kite_core::reslat::Op::Mul),
                });
                let summary = format!(
                    "comm={} div={} prelin={} si={}",
                    flags["commutative"], flags["divisible"], flags["prelinear"], flags["subdirectly_irreducible"]
                );
                r.push(&format!("lattice {i}"), Status::Info, summary, flags);
            }
            r.push("count", Status::Info, all.len().to_string(), all.len());
        }
        EnumKind::Frames => {
            let all = enumerate_frames(n);
            r.input("kind", "frames");
            for (i, f) in all.iter().enumerate() {
                let c = classify(&Frame::Finite(f.clone()), false);
                r.push(
                    &format!("frame {i}"),
                    Status::Info,
                    format!("lambda {:?}: {:?}", f.pairs(), c.tag),
                    &c,
                );
            }
            r.push("count", Status::Info, all.len().to_string(), all.len());
        }
    }
    Ok(r)
}

pub fn export(ctx: &Resolver, kind: ExportKind, reference: &str) -> Result<String, String> {
    Ok(match kind {
        ExportKind::Lattice => kite_core::reslat::io::serialize(&ctx.lattice(reference)?),
        ExportKind::Frame => kite_core::frame::io::serialize(&ctx.frame(reference)?),
    })
}
