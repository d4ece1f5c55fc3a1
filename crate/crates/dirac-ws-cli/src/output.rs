//! Table rendering and the run manifest.
//!
//! CSV is the golden-file format: header row, comma separator, lowercase
//! column names, 17 significant digits, LF line endings, holes as empty
//! fields — identical inputs must yield byte-identical files. JSON output is
//! one object with a "manifest" copy and a "series" array of row objects
//! (holes become null).

use std::io;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

#[derive(clap::ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }

    pub fn label(self) -> &'static str {
        self.extension()
    }
}

/// One table cell. `Empty` marks a hole (a grid point whose evaluation
/// failed, kept so curves stay aligned with their abscissas).
#[derive(Debug, Clone, Copy)]
pub enum Cell {
    Num(f64),
    Count(usize),
    Flag(bool),
    Empty,
}

impl Cell {
    /// Lossless-enough fixed formatting: 17 significant digits round-trips
    /// every f64.
    fn csv(self) -> String {
        match self {
            Cell::Num(v) => format!("{v:.16e}"),
            Cell::Count(n) => n.to_string(),
            Cell::Flag(b) => if b { "1" } else { "0" }.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(self) -> Value {
        match self {
            Cell::Num(v) => json!(v),
            Cell::Count(n) => json!(n),
            Cell::Flag(b) => json!(b),
            Cell::Empty => Value::Null,
        }
    }
}

/// A named data series. `name` is `None` for a command's main table and a
/// suffix (joined as `<stem>_<name>`) for sidecars.
#[derive(Debug, Clone)]
pub struct Table {
    pub name: Option<&'static str>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for row in &self.rows {
            debug_assert_eq!(row.len(), self.columns.len());
            let fields: Vec<String> = row.iter().map(|c| c.csv()).collect();
            s.push_str(&fields.join(","));
            s.push('\n');
        }
        s
    }

    /// Rows as self-describing objects keyed by column name.
    pub fn to_series(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (k, c) in self.columns.iter().zip(row) {
                    obj.insert(k.to_string(), c.json());
                }
                Value::Object(obj)
            })
            .collect();
        Value::Array(rows)
    }
}

/// Provenance record written next to every produced file: enough to re-run
/// the command and reproduce the data bit-identically.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    /// Fully resolved parameter set (defaults, preset, config file, and
    /// flags already merged).
    pub params: Value,
    /// File names written by this run, relative to the manifest.
    pub outputs: Vec<String>,
    pub duration_ms: u64,
}

impl RunManifest {
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}

/// The manifest lives next to its outputs, named after their shared stem.
pub fn manifest_path(out: &Path) -> PathBuf {
    out.with_extension("manifest.json")
}

/// Everything a command produces: a main table, optional named sidecar
/// tables, and the resolved parameters that define the run.
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub command: String,
    pub params: Value,
    pub main: Table,
    pub sidecars: Vec<Table>,
}

impl CommandOutput {
    fn manifest(&self, outputs: Vec<String>, duration_ms: u64) -> RunManifest {
        RunManifest {
            command: self.command.clone(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            params: self.params.clone(),
            outputs,
            duration_ms,
        }
    }

    /// The JSON document: one object holding the manifest, the main series,
    /// and one extra array per sidecar table.
    fn json_doc(&self, manifest: &RunManifest) -> Value {
        let mut obj = serde_json::Map::new();
        obj.insert(
            "manifest".into(),
            serde_json::to_value(manifest).expect("manifest serializes"),
        );
        obj.insert("series".into(), self.main.to_series());
        for t in &self.sidecars {
            obj.insert(
                t.name.expect("sidecar tables are named").into(),
                t.to_series(),
            );
        }
        Value::Object(obj)
    }
}

/// Render a command's output: to stdout when `out` is None, otherwise to
/// `out` (JSON keeps sidecar series inside the one document; CSV writes them
/// as `<stem>_<name>` files) with a manifest next to the data.
pub fn emit(
    co: &CommandOutput,
    fmt: Format,
    out: Option<&Path>,
    duration_ms: u64,
) -> io::Result<()> {
    let Some(main_path) = out else {
        use io::Write;
        let mut w = io::stdout().lock();
        match fmt {
            Format::Csv => {
                w.write_all(co.main.to_csv().as_bytes())?;
                for t in &co.sidecars {
                    write!(w, "\n# {}\n", t.name.expect("sidecar tables are named"))?;
                    w.write_all(t.to_csv().as_bytes())?;
                }
            }
            Format::Json => {
                let manifest = co.manifest(Vec::new(), duration_ms);
                let doc = co.json_doc(&manifest);
                writeln!(
                    w,
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("document serializes")
                )?;
            }
        }
        return Ok(());
    };

    let ext = main_path
        .extension()
        .and_then(|e| e.to_str())
        .unwrap_or(fmt.extension())
        .to_string();
    let stem = main_path.with_extension("");
    let stem_name = stem
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let side_path = |name: &str| stem.with_file_name(format!("{stem_name}_{name}.{ext}"));

    // plan the files first so the manifest can list them before anything is
    // written
    let mut files: Vec<(PathBuf, String)> = Vec::new();
    let mut outputs = Vec::new();
    let push_name = |outputs: &mut Vec<String>, p: &Path| {
        outputs.push(
            p.file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default(),
        );
    };
    match fmt {
        Format::Csv => {
            push_name(&mut outputs, main_path);
            for t in &co.sidecars {
                push_name(
                    &mut outputs,
                    &side_path(t.name.expect("sidecar tables are named")),
                );
            }
            let manifest = co.manifest(outputs, duration_ms);
            files.push((main_path.to_path_buf(), co.main.to_csv()));
            for t in &co.sidecars {
                files.push((side_path(t.name.unwrap()), t.to_csv()));
            }
            files.push((manifest_path(main_path), manifest.to_json_string()));
        }
        Format::Json => {
            push_name(&mut outputs, main_path);
            let manifest = co.manifest(outputs, duration_ms);
            let mut doc =
                serde_json::to_string_pretty(&co.json_doc(&manifest)).expect("document serializes");
            doc.push('\n');
            files.push((main_path.to_path_buf(), doc));
            files.push((manifest_path(main_path), manifest.to_json_string()));
        }
    }
    for (path, content) in files {
        std::fs::write(&path, content)?;
    }
    Ok(())
}
