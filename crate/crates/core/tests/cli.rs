mod common;

use std::path::Path;
use std::process::{Command, Output};

use chaotic_haar::cipher::CipherMode;
use chaotic_haar::io::{format_key_file, read_pgm, write_pgm};
use tempfile::TempDir;

fn cthaar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cthaar")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        write_pgm(&common::natural_image(64, 8), dir.path().join("plain.pgm")).unwrap();
        std::fs::write(dir.path().join("key.txt"), format_key_file(&common::reference_key())).unwrap();
        let literal = common::reference_key().with_mode(CipherMode::Literal);
        std::fs::write(dir.path().join("literal.txt"), format_key_file(&literal)).unwrap();
        Fixture { dir }
    }

    fn path(&self, name: &str) -> std::path::PathBuf {
        self.dir.path().join(name)
    }
}

#[test]
fn encrypt_decrypt_roundtrip_is_pixel_identical() {
    let f = Fixture::new();
    let (plain, key, enc, dec) = (f.path("plain.pgm"), f.path("key.txt"), f.path("enc.pgm"), f.path("dec.pgm"));
    assert!(cthaar(&["encrypt", "--in", s(&plain), "--key", s(&key), "--out", s(&enc)]).status.success());
    assert!(cthaar(&["decrypt", "--in", s(&enc), "--key", s(&key), "--out", s(&dec)]).status.success());
    assert_eq!(std::fs::read(&plain).unwrap(), std::fs::read(&dec).unwrap());
    assert_ne!(read_pgm(&enc).unwrap(), read_pgm(&plain).unwrap());
}

#[test]
fn outputs_are_deterministic() {
    let f = Fixture::new();
    let (plain, key) = (f.path("plain.pgm"), f.path("key.txt"));
    for out in ["a.pgm", "b.pgm"] {
        assert!(cthaar(&["encrypt", "--in", s(&plain), "--key", s(&key), "--out", s(&f.path(out))]).status.success());
    }
    assert_eq!(std::fs::read(f.path("a.pgm")).unwrap(), std::fs::read(f.path("b.pgm")).unwrap());
    let a = cthaar(&["analyze", "--in", s(&plain), "--seed", "5"]);
    let b = cthaar(&["analyze", "--in", s(&plain), "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn decrypt_refuses_literal_mode() {
    let f = Fixture::new();
    let out = cthaar(&["decrypt", "--in", s(&f.path("plain.pgm")), "--key", s(&f.path("literal.txt")), "--out", s(&f.path("x.pgm"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("literal mode"));
    assert!(!f.path("x.pgm").exists());
}

#[test]
fn diff_of_identical_images_is_zero() {
    let f = Fixture::new();
    let p = f.path("plain.pgm");
    let out = cthaar(&["diff", "--a", s(&p), "--b", s(&p)]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "npcr_percent = 0.000\nuaci_percent = 0.000\n");
}

#[test]
fn analyze_writes_report_and_csv() {
    let f = Fixture::new();
    let csv = f.path("hist.csv");
    let out = cthaar(&["analyze", "--in", s(&f.path("plain.pgm")), "--pairs", "500", "--csv", s(&csv)]);
    assert!(out.status.success());
    let text = stdout(&out);
    for key in ["mean_intensity", "entropy_normalized", "correlation_horizontal", "correlation_vertical", "correlation_diagonal"] {
        assert!(text.contains(&format!("{key} = ")), "{text}");
    }
    let csv = std::fs::read_to_string(csv).unwrap();
    assert!(csv.starts_with("level,count\n"));
    assert_eq!(csv.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap()).sum::<u64>(), 4096);
}

#[test]
fn transform_writes_bands_and_composite() {
    let f = Fixture::new();
    let out_dir = f.path("bands");
    let out = cthaar(&["transform", "--in", s(&f.path("plain.pgm")), "--key", s(&f.path("key.txt")), "--levels", "2", "--out-dir", s(&out_dir)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for (name, side) in [("ll2", 16), ("lh2", 16), ("hl2", 16), ("hh2", 16), ("lh1", 32), ("hl1", 32), ("hh1", 32), ("composite", 64)] {
        let img = read_pgm(out_dir.join(format!("{name}.pgm"))).unwrap();
        assert_eq!((img.width(), img.height()), (side, side), "{name}");
    }
}

#[test]
fn keyspace_values() {
    let out = cthaar(&["keyspace", "--precision", "1e-3"]);
    assert_eq!(stdout(&out), "key_space_bits = 239.2\n");
    let out = cthaar(&["keyspace", "--precision", "0.5", "--instances", "1"]);
    assert_eq!(stdout(&out), "key_space_bits = 1.0\n");
}

#[test]
fn exit_codes() {
    let f = Fixture::new();
    assert_eq!(cthaar(&[]).status.code(), Some(1));
    assert_eq!(cthaar(&["encrypt", "--in", "x.pgm"]).status.code(), Some(1));
    assert_eq!(cthaar(&["--help"]).status.code(), Some(0));
    assert_eq!(cthaar(&["keyspace", "--precision", "2"]).status.code(), Some(2));
    assert_eq!(cthaar(&["analyze", "--in", s(&f.path("missing.pgm"))]).status.code(), Some(2));

    std::fs::write(f.path("bad.txt"), "x0 = 0.5\n").unwrap();
    let out = cthaar(&["encrypt", "--in", s(&f.path("plain.pgm")), "--key", s(&f.path("bad.txt")), "--out", s(&f.path("o.pgm"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    // both maps grow like x / (N a)^2 here, so the orbit escapes onto a pole
    let mut escaping = common::reference_key();
    escaping.stages[0] = chaotic_haar::chaos::ChaosParams::new(0.59, 5, 2, 0.58, 0.3, 0.42).unwrap();
    std::fs::write(f.path("escape.txt"), format_key_file(&escaping)).unwrap();
    let out = cthaar(&["encrypt", "--in", s(&f.path("plain.pgm")), "--key", s(&f.path("escape.txt")), "--out", s(&f.path("o.pgm"))]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}
