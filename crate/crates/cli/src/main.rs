//! `skelaug`: synthesize, preprocess, split, augment, analyse, render and
//! export skeleton gait datasets.

mod augment;
mod common;
mod export;
mod mi;
mod preprocess;
mod render;
mod split;
mod synth;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::common::UsageError;

#[derive(Debug, Parser)]
#[command(name = "skelaug", version, about = "Skeleton gait augmentation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a labeled synthetic walking dataset.
    Synth(synth::Args),
    /// Tilt-correct, center, smooth, simplify and window a dataset.
    Preprocess(preprocess::Args),
    /// Assign whole subjects to train or test.
    Split(split::Args),
    /// Add augmented copies of the training entries.
    Augment(augment::Args),
    /// Average mutual information between raw and augmented entries.
    Mi(mi::Args),
    /// Draw one or more frames of a sequence as an SVG stick figure.
    Render(render::Args),
    /// Write a tensor bundle for the training harness.
    Export(export::Args),
}

const EXIT_USAGE: u8 = 2;
const EXIT_DATA: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Synth(a) => synth::run(a),
        Command::Preprocess(a) => preprocess::run(a),
        Command::Split(a) => split::run(a),
        Command::Augment(a) => augment::run(a),
        Command::Mi(a) => mi::run(a),
        Command::Render(a) => render::run(a),
        Command::Export(a) => export::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<UsageError>() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::from(EXIT_DATA)
            }
        }
    }
}
