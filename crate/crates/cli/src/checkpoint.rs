//! Resumable completion stages stored as matrix files named
//! `<matrix id>.s<stage>.ckpt`, one vector per row.

use std::path::{Path, PathBuf};

use markov_complexity::bases::{matrix_id, Checkpoints, Stage};
use markov_complexity::IntMatrix;

use crate::io::write_atomic;
use crate::matrix_file;

pub struct CheckpointDir {
    dir: PathBuf,
}

impl CheckpointDir {
    pub fn new(dir: &Path) -> std::io::Result<Self> {
        std::fs::create_dir_all(dir)?;
        Ok(CheckpointDir { dir: dir.to_path_buf() })
    }

    fn prefix(m: &IntMatrix) -> String {
        matrix_id(m).replace(':', "-")
    }

    /// Stages on disk for `m`, sorted by stage number.
    fn stages(&self, m: &IntMatrix) -> Vec<(usize, PathBuf)> {
        let prefix = format!("{}.s", Self::prefix(m));
        let Ok(entries) = std::fs::read_dir(&self.dir) else {
            return Vec::new();
        };
        let mut out: Vec<(usize, PathBuf)> = entries
            .filter_map(|e| e.ok())
            .filter_map(|e| {
                let name = e.file_name().into_string().ok()?;
                let stage = name.strip_prefix(&prefix)?.strip_suffix(".ckpt")?.parse().ok()?;
                Some((stage, e.path()))
            })
            .collect();
        out.sort();
        out
    }
}

impl Checkpoints for CheckpointDir {
    fn load(&self, m: &IntMatrix) -> Option<Stage> {
        let (lifted, path) = self.stages(m).pop()?;
        let vectors = matrix_file::read(&path).ok()?.row_vectors();
        if vectors.iter().any(|v| v.len() != m.cols()) {
            return None;
        }
        Some(Stage { lifted, vectors })
    }

    fn save(&self, m: &IntMatrix, stage: &Stage) {
        let path = self.dir.join(format!("{}.s{}.ckpt", Self::prefix(m), stage.lifted));
        let text = matrix_file::render_vectors(&stage.vectors, m.cols());
        if let Err(e) = write_atomic(&path, &text) {
            eprintln!("warning: checkpoint not saved: {e}");
            return;
        }
        for (lifted, old) in self.stages(m) {
            if lifted < stage.lifted {
                let _ = std::fs::remove_file(old);
            }
        }
    }
}
