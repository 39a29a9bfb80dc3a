use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

/// `x` rounded to two significant figures, in plain decimal notation.
pub fn two_figures(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let text = fixed(x, magnitude);
    // rounding may carry into the next decade, e.g. 9.96 -> 10
    let carried: f64 = text.parse().unwrap();
    if carried.abs() >= 10f64.powi(magnitude + 1) {
        fixed(x, magnitude + 1)
    } else {
        text
    }
}

fn fixed(x: f64, magnitude: i32) -> String {
    if magnitude >= 1 {
        let unit = 10f64.powi(magnitude - 1);
        format!("{:.0}", (x / unit).round() * unit)
    } else {
        format!("{:.*}", (1 - magnitude) as usize, x)
    }
}

/// Where a command's main output goes.
pub enum Sink {
    Stdout,
    Directory(PathBuf),
}

impl Sink {
    pub fn new(out: Option<&Path>) -> Self {
        match out {
            Some(dir) => Sink::Directory(dir.to_path_buf()),
            None => Sink::Stdout,
        }
    }

    /// Writes `text` to stdout, or to `name` inside the output directory.
    pub fn emit(&self, name: &str, text: &str) -> io::Result<()> {
        match self {
            Sink::Stdout => io::stdout().lock().write_all(text.as_bytes()),
            Sink::Directory(dir) => {
                fs::create_dir_all(dir)?;
                fs::write(dir.join(name), text)
            }
        }
    }
}

pub fn csv_text<S: serde::Serialize>(rows: impl IntoIterator<Item = S>) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn jsonl_text<S: serde::Serialize>(rows: impl IntoIterator<Item = S>) -> serde_json::Result<String> {
    let mut out = String::new();
    for row in rows {
        out.push_str(&serde_json::to_string(&row)?);
        out.push('\n');
    }
    Ok(out)
}
