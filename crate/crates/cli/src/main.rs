//! `adjoint-blocks`: Jordan block sizes on the Lie algebras of type C in characteristic 2.

mod render;
mod verify;

use std::ops::RangeInclusive;
use std::process::ExitCode;

use adjoint_blocks::adjoint::report;
use adjoint_blocks::block_arith::{ext2, sym2, tensor};
use adjoint_blocks::chevalley::oracle_types;
use adjoint_blocks::classes::{enumerate, parse_decomp, ClassError};
use adjoint_blocks::Kind;
use clap::{Parser, Subcommand, ValueEnum};

use render::{render, render_text, Format, Row};

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_SEMANTIC: u8 = 3;

#[derive(Parser)]
#[command(name = "adjoint-blocks", version, about = "Jordan blocks of unipotent and nilpotent elements of Sp(2l) in characteristic 2 on g_sc, [g_ad, g_ad] and g_ad")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Unipotent,
    Nilpotent,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Unipotent => Kind::Unipotent,
            KindArg::Nilpotent => Kind::Nilpotent,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BlockOp {
    Tensor,
    Sym2,
    Ext2,
}

#[derive(Subcommand)]
enum Command {
    /// Report for one class given by its orthogonal decomposition
    Compute {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// e.g. "W(1)^2 + V(4)" or "W_1(3) ⊥ V(2)"
        #[arg(long)]
        decomp: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Compute the module types from explicit matrices; exit 1 if they disagree with the formulas
        #[arg(long)]
        oracle: bool,
        /// Fail unless the class has this rank
        #[arg(long)]
        ell_check: Option<usize>,
    },
    /// One row per class for each rank in the range
    Table {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// A rank or an inclusive range "a..b"
        #[arg(long, visible_alias = "ell-range", value_parser = parse_ell_range)]
        ell: RangeInclusive<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Check formulas against matrix computations for every class up to the given rank
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_ell: u64,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
    },
    /// Jordan type of V_m ⊗ V_n, S²(V_n) or ∧²(V_n)
    Blocks {
        #[arg(value_enum)]
        op: BlockOp,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(required = true, num_args = 1..=2, value_parser = clap::value_parser!(u64).range(1..))]
        sizes: Vec<u64>,
    },
}

fn parse_ell_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("not a rank: {t:?}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let a = num(s)?;
            (a, a)
        }
    };
    if a == 0 || a > b {
        return Err(format!("expected 1 <= a <= b, got {s:?}"));
    }
    Ok(a..=b)
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn emit(rows: &[Row], format: Format) -> ExitCode {
    match render(rows, format) {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(e) => fail(EXIT_SEMANTIC, e),
    }
}

fn compute(kind: Kind, decomp: &str, format: Format, oracle: bool, ell_check: Option<usize>) -> ExitCode {
    let class = match parse_decomp(decomp, kind) {
        Ok(c) => c,
        Err(e @ ClassError::Parse { .. }) => return fail(EXIT_USAGE, e),
        Err(e @ ClassError::InvalidPart { .. }) => return fail(EXIT_SEMANTIC, e),
    };
    if let Some(l) = ell_check {
        if class.ell() != l {
            return fail(EXIT_SEMANTIC, format!("{class} has rank {}, expected {l}", class.ell()));
        }
    }
    let mut r = match report(&class) {
        Ok(r) => r,
        Err(e) => return fail(EXIT_MISMATCH, e),
    };
    let mut mismatch = false;
    if oracle {
        let o = match oracle_types(&class) {
            Ok(o) => o,
            Err(e) => return fail(EXIT_MISMATCH, e),
        };
        for (name, formula, got) in [
            ("g_sc", &r.type_gsc, &o.sc),
            ("g_sc/Z", &r.type_derived, &o.sc_mod_center),
            ("[g_ad,g_ad]", &r.type_derived, &o.derived),
            ("g_ad", &r.type_gad, &o.ad),
        ] {
            if formula != got {
                eprintln!("mismatch on {name}: formula {} oracle {}", formula.to_compact(), got.to_compact());
                mismatch = true;
            }
        }
        r.dim_cent_sc = o.sc.num_blocks();
        r.dim_cent_ad = o.ad.num_blocks();
        r.type_gsc = o.sc;
        r.type_derived = o.derived;
        r.type_gad = o.ad;
    }
    let code = if format == Format::Text {
        print!("{}", render_text(&r));
        ExitCode::SUCCESS
    } else {
        emit(&[Row::from(&r)], format)
    };
    if mismatch {
        ExitCode::from(EXIT_MISMATCH)
    } else {
        code
    }
}

fn table(kind: Kind, ell: RangeInclusive<usize>, format: Format) -> ExitCode {
    let mut rows = Vec::new();
    for l in ell {
        for c in enumerate(l, kind) {
            match report(&c) {
                Ok(r) => rows.push(Row::from(&r)),
                Err(e) => return fail(EXIT_MISMATCH, format!("{c}: {e}")),
            }
        }
    }
    emit(&rows, format)
}

fn run_verify(max_ell: usize, kind: Option<Kind>) -> ExitCode {
    let kinds = match kind {
        Some(k) => vec![k],
        None => vec![Kind::Unipotent, Kind::Nilpotent],
    };
    let mut classes = 0;
    let mut failures = Vec::new();
    for &k in &kinds {
        for l in 1..=max_ell {
            for c in enumerate(l, k) {
                classes += 1;
                let f = verify::verify_class(&c);
                println!("{} ell={l} {k} {c}", if f.is_empty() { "ok  " } else { "FAIL" });
                failures.extend(f);
            }
        }
    }
    let class_failures = failures.len();
    let (checks, arith) = verify::verify_block_arith((4 * max_ell).clamp(8, 32));
    println!("block_arith: {checks} checks, {} failures", arith.len());
    failures.extend(arith);
    println!("{classes} classes verified, {class_failures} failures");
    if let Some(first) = failures.first() {
        println!("counterexample: {first}");
        for f in &failures[1..] {
            println!("  also: {f}");
        }
        return ExitCode::from(EXIT_MISMATCH);
    }
    ExitCode::SUCCESS
}

fn blocks(op: BlockOp, kind: Kind, sizes: &[u64]) -> ExitCode {
    let t = match (op, sizes) {
        (BlockOp::Tensor, &[m, n]) => tensor(m.min(n) as usize, m.max(n) as usize, kind),
        (BlockOp::Sym2, &[n]) => sym2(n as usize, kind),
        (BlockOp::Ext2, &[n]) => ext2(n as usize, kind),
        (BlockOp::Tensor, _) => return fail(EXIT_USAGE, "tensor takes two sizes"),
        _ => return fail(EXIT_USAGE, "sym2 and ext2 take one size"),
    };
    println!("{t}");
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::Compute { kind, decomp, format, oracle, ell_check } => {
            compute(kind.into(), &decomp, format, oracle, ell_check)
        }
        Command::Table { kind, ell, format } => table(kind.into(), ell, format),
        Command::Verify { max_ell, kind } => run_verify(max_ell as usize, kind.map(Kind::from)),
        Command::Blocks { op, kind, sizes } => blocks(op, kind.into(), &sizes),
    }
}
