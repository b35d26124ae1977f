use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use wreathkit::cli::{self, Command, Config, Format};
use wreathkit::fingrp::Caps;

#[derive(Parser)]
#[command(
    name = "wreathkit",
    version,
    about = "Subgroups of free groups and free products of finite groups"
)]
struct Args {
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: FormatArg,
    /// seed for the ChaCha8 sampler used by the verify commands
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 200)]
    samples: usize,
    /// base factor index for Kurosh systems
    #[arg(long, global = true)]
    alpha0: Option<usize>,
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_group_order: Option<u64>,
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_index: Option<u64>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a problem file
    Check { problem: PathBuf },
    /// Nielsen-Schreier commands (free_group problems)
    Ns {
        #[command(subcommand)]
        op: NsCmd,
    },
    /// Kurosh commands (free_product problems)
    Kurosh {
        #[command(subcommand)]
        op: KuroshCmd,
    },
    /// Standard wreath-product embedding of a word
    Embed { problem: PathBuf, word: String },
}

#[derive(Subcommand)]
enum NsCmd {
    Basis { problem: PathBuf },
    Rewrite { problem: PathBuf, word: String },
    Verify { problem: PathBuf },
}

#[derive(Subcommand)]
enum KuroshCmd {
    System { problem: PathBuf },
    Decompose { problem: PathBuf },
    Rewrite { problem: PathBuf, word: String },
    Verify { problem: PathBuf },
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mut caps = Caps::default();
    if let Some(n) = args.max_group_order {
        caps.max_group_order = n as usize;
    }
    if let Some(n) = args.max_index {
        caps.max_index = n as usize;
    }
    let config = Config {
        caps,
        seed: args.seed,
        samples: args.samples,
        format: match args.format {
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
        },
        alpha0: args.alpha0,
    };
    let (command, path) = match args.command {
        Cmd::Check { problem } => (Command::Check, problem),
        Cmd::Ns {
            op: NsCmd::Basis { problem },
        } => (Command::NsBasis, problem),
        Cmd::Ns {
            op: NsCmd::Rewrite { problem, word },
        } => (Command::NsRewrite(word), problem),
        Cmd::Ns {
            op: NsCmd::Verify { problem },
        } => (Command::NsVerify, problem),
        Cmd::Kurosh {
            op: KuroshCmd::System { problem },
        } => (Command::KuroshSystem, problem),
        Cmd::Kurosh {
            op: KuroshCmd::Decompose { problem },
        } => (Command::KuroshDecompose, problem),
        Cmd::Kurosh {
            op: KuroshCmd::Rewrite { problem, word },
        } => (Command::KuroshRewrite(word), problem),
        Cmd::Kurosh {
            op: KuroshCmd::Verify { problem },
        } => (Command::KuroshVerify, problem),
        Cmd::Embed { problem, word } => (Command::Embed(word), problem),
    };
    let out = cli::run(&command, &path, &config);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
