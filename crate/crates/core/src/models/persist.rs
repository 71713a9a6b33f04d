//! Trained-model files: a single JSON document
//! `{"format": "mevolve-model", "version": 1, "model": {...}}`.
//! Floats are written in shortest round-trip form and parsed exactly, so
//! weights and stored KNN vectors survive a save/load bit for bit.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::SpectralClassifier;
use crate::error::{Error, Result};

pub const MODEL_FORMAT_VERSION: u32 = 1;
const FORMAT: &str = "mevolve-model";

#[derive(Serialize, Deserialize)]
struct Envelope<M> {
    format: String,
    version: u32,
    model: M,
}

pub fn write_model<W: Write>(model: &SpectralClassifier, mut w: W) -> std::io::Result<()> {
    let env = Envelope {
        format: FORMAT.to_string(),
        version: MODEL_FORMAT_VERSION,
        model,
    };
    serde_json::to_writer(&mut w, &env)?;
    w.write_all(b"\n")?;
    w.flush()
}

pub fn read_model<R: Read>(r: R, path: &Path) -> Result<SpectralClassifier> {
    let err = |message: String| Error::Model {
        path: path.to_path_buf(),
        message,
    };
    let value: serde_json::Value = serde_json::from_reader(r).map_err(|e| err(e.to_string()))?;
    let format = value.get("format").and_then(|v| v.as_str());
    if format != Some(FORMAT) {
        return Err(err(format!("not a model file (format {format:?})")));
    }
    let version = value.get("version").and_then(|v| v.as_u64());
    if version != Some(u64::from(MODEL_FORMAT_VERSION)) {
        return Err(err(format!(
            "unsupported model version {version:?}, expected {MODEL_FORMAT_VERSION}"
        )));
    }
    let env: Envelope<SpectralClassifier> = serde_json::from_value(value).map_err(|e| err(e.to_string()))?;
    Ok(env.model)
}

pub fn save_model(model: &SpectralClassifier, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let f = File::create(path).map_err(|e| Error::io(path, e))?;
    write_model(model, BufWriter::new(f)).map_err(|e| Error::io(path, e))
}

pub fn load_model(path: impl AsRef<Path>) -> Result<SpectralClassifier> {
    let path = path.as_ref();
    let f = File::open(path).map_err(|e| Error::io(path, e))?;
    read_model(BufReader::new(f), path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::LabeledDataset;
    use crate::graph::Graph;
    use crate::models::{ClassifierKind, GraphClassifier, ModelConfig};

    fn trained(kind: ClassifierKind) -> SpectralClassifier {
        let graphs: Vec<Graph> = (3..11)
            .map(|n| Graph::from_edges(n, (0..n - 1).map(|i| (i, i + 1))).unwrap())
            .collect();
        let labels = (0..8).map(|i| i % 2).collect();
        let data = LabeledDataset::from_parts(graphs, labels, 2).unwrap();
        let mut m = ModelConfig {
            embedding_dim: 6,
            classifier: kind,
            knn_k: 3,
            ..ModelConfig::default()
        }
        .build();
        m.fit(&data).unwrap();
        m
    }

    #[test]
    fn exact_round_trip() {
        for kind in [ClassifierKind::Knn, ClassifierKind::Logistic] {
            let m = trained(kind);
            let mut buf = Vec::new();
            write_model(&m, &mut buf).unwrap();
            let back = read_model(buf.as_slice(), Path::new("mem")).unwrap();
            assert_eq!(back, m);
        }
    }

    #[test]
    fn version_mismatch() {
        let text = r#"{"format":"mevolve-model","version":9,"model":{}}"#;
        let err = read_model(text.as_bytes(), Path::new("mem")).unwrap_err();
        assert!(err.to_string().contains("version"));
        assert!(read_model(&b"{}"[..], Path::new("mem")).is_err());
    }
}
