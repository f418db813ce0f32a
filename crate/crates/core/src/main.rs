use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chaotic_haar::chaos::LambdaStream;
use chaotic_haar::cipher::{self, KeySchedule};
use chaotic_haar::error::{ChaosError, CipherError, IoError, MetricsError, WaveletError};
use chaotic_haar::io::{read_key_file, read_pgm, require_cipher_shape, write_pgm};
use chaotic_haar::metrics::{self, DEFAULT_PAIRS};
use chaotic_haar::wavelet::{decompose, level_matrices, rescale_to_gray};
use chaotic_haar::{GrayImage, Matrix64};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "cthaar", version, about = "Chaotic trigonometric Haar wavelet transform and image cipher")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose an image and write rescaled sub-band images.
    Transform {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        key: PathBuf,
        /// Decomposition depth; level k uses the key's stage k.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=4))]
        levels: u8,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Encrypt a PGM image.
    Encrypt {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decrypt a keystream-mode ciphertext.
    Decrypt {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print histogram, entropy, mean and adjacent-pixel correlations.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_PAIRS)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the histogram as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// NPCR and UACI between two images.
    Diff {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Key-space size in bits; without --precision prints a table.
    Keyspace {
        #[arg(long)]
        precision: Option<f64>,
        #[arg(long, default_value_t = 24)]
        instances: usize,
    },
}

enum Failure {
    Data(String),
    Numeric(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Data(_) => 2,
            Failure::Numeric(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Data(m) | Failure::Numeric(m) => m,
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Data(e.to_string())
    }
}

impl From<MetricsError> for Failure {
    fn from(e: MetricsError) -> Self {
        Failure::Data(e.to_string())
    }
}

impl From<ChaosError> for Failure {
    fn from(e: ChaosError) -> Self {
        match e {
            ChaosError::InvalidParam { .. } => Failure::Data(e.to_string()),
            _ => Failure::Numeric(e.to_string()),
        }
    }
}

impl From<WaveletError> for Failure {
    fn from(e: WaveletError) -> Self {
        match e {
            WaveletError::Chaos(c) => c.into(),
            WaveletError::Singular | WaveletError::SingularAfterRedraws { .. } => Failure::Numeric(e.to_string()),
            _ => Failure::Data(e.to_string()),
        }
    }
}

impl From<CipherError> for Failure {
    fn from(e: CipherError) -> Self {
        match e {
            CipherError::Wavelet(w) => w.into(),
            CipherError::Chaos(c) => c.into(),
            CipherError::NonFinite { .. } => Failure::Numeric(e.to_string()),
            _ => Failure::Data(e.to_string()),
        }
    }
}

fn to_matrix(img: &GrayImage) -> Matrix64 {
    Matrix64::from_fn(img.height(), img.width(), |r, c| f64::from(img.get(r, c)))
}

fn band_image(band: &Matrix64) -> GrayImage {
    GrayImage::new(band.cols(), band.rows(), rescale_to_gray(band))
}

fn cipher_inputs(input: &Path, key: &Path) -> Result<(GrayImage, KeySchedule), Failure> {
    let img = read_pgm(input)?;
    require_cipher_shape(&img)?;
    Ok((img, read_key_file(key)?))
}

fn transform(input: &Path, key: &Path, levels: usize, out_dir: &Path) -> Result<(), Failure> {
    let img = read_pgm(input)?;
    let ks = read_key_file(key)?;
    if !img.is_square() {
        return Err(IoError::Shape { width: img.width(), height: img.height() }.into());
    }
    let n = img.width();
    let mut streams = ks.stages[..levels]
        .iter()
        .map(|&p| LambdaStream::new(p, ks.burn_in))
        .collect::<Result<Vec<_>, _>>()?;
    let matrices = level_matrices(n, &mut streams, ks.normalization)?;
    let tree = decompose(&to_matrix(&img), &matrices)?;
    fs::create_dir_all(out_dir).map_err(IoError::from)?;

    let mut composite = GrayImage::filled(n, n, 0);
    let mut paste = |band: &GrayImage, r0: usize, c0: usize| {
        for r in 0..band.height() {
            for c in 0..band.width() {
                composite.set(r0 + r, c0 + c, band.get(r, c));
            }
        }
    };
    for level in 1..=levels {
        let sb = tree.subbands(level);
        let s = sb.side();
        for (name, band, r0, c0) in [("lh", &sb.lh, s, 0), ("hl", &sb.hl, 0, s), ("hh", &sb.hh, s, s)] {
            let g = band_image(band);
            write_pgm(&g, out_dir.join(format!("{name}{level}.pgm")))?;
            paste(&g, r0, c0);
        }
        if level == levels {
            let g = band_image(&sb.ll);
            write_pgm(&g, out_dir.join(format!("ll{level}.pgm")))?;
            paste(&g, 0, 0);
        }
    }
    write_pgm(&composite, out_dir.join("composite.pgm"))?;
    println!("wrote {} sub-band images and composite.pgm to {}", 3 * levels + 1, out_dir.display());
    Ok(())
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Transform { input, key, levels, out_dir } => transform(&input, &key, levels as usize, &out_dir),
        Command::Encrypt { input, key, out } => {
            let (img, ks) = cipher_inputs(&input, &key)?;
            write_pgm(&cipher::encrypt(&img, &ks)?, out)?;
            Ok(())
        }
        Command::Decrypt { input, key, out } => {
            let (img, ks) = cipher_inputs(&input, &key)?;
            write_pgm(&cipher::decrypt(&img, &ks)?, out)?;
            Ok(())
        }
        Command::Analyze { input, pairs, seed, csv } => {
            let img = read_pgm(&input)?;
            let report = metrics::analyze(&img, pairs, seed)?;
            print!("{}", report.to_key_value());
            if let Some(path) = csv {
                fs::write(path, report.histogram_csv()).map_err(IoError::from)?;
            }
            Ok(())
        }
        Command::Diff { a, b } => {
            let (a, b) = (read_pgm(a)?, read_pgm(b)?);
            println!("npcr_percent = {:.3}", metrics::npcr(&a, &b)?);
            println!("uaci_percent = {:.3}", metrics::uaci(&a, &b)?);
            Ok(())
        }
        Command::Keyspace { precision: Some(p), instances } => {
            println!("key_space_bits = {:.1}", metrics::key_space_bits(p, instances)?);
            Ok(())
        }
        Command::Keyspace { precision: None, instances } => {
            println!("precision,key_space_bits");
            for k in 1..=16 {
                let p = 10f64.powi(-k);
                println!("1e-{k},{:.1}", metrics::key_space_bits(p, instances)?);
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
