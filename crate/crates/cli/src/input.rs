use std::path::{Path, PathBuf};
use std::sync::Arc;

use dtk_core::io::{detect_format, parse_cu_adjacency, parse_edges, parse_grid, parse_image_points, parse_np_adjacency, parse_points, ImageFormat};
use dtk_core::{Adjacency, DigitalImage, PointSet};
use sha2::{Digest, Sha256};

use crate::ImageArgs;

#[derive(Debug)]
pub enum InputError {
    Io(PathBuf, std::io::Error),
    Core(PathBuf, dtk_core::Error),
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InputError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            InputError::Core(p, e) => write!(f, "{}: {e}", p.display()),
        }
    }
}

/// A file read for this run, with its SHA-256.
#[derive(Clone, Debug)]
pub struct InputFile {
    pub role: &'static str,
    pub path: PathBuf,
    pub sha256: String,
}

pub struct Inputs {
    pub files: Vec<InputFile>,
}

impl Inputs {
    pub fn new() -> Self {
        Inputs { files: Vec::new() }
    }

    pub fn read(&mut self, role: &'static str, path: &Path) -> Result<String, InputError> {
        let bytes = std::fs::read(path).map_err(|e| InputError::Io(path.to_path_buf(), e))?;
        self.files.push(InputFile {
            role,
            path: path.to_path_buf(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        });
        String::from_utf8(bytes).map_err(|e| {
            InputError::Io(path.to_path_buf(), std::io::Error::new(std::io::ErrorKind::InvalidData, e))
        })
    }

    pub fn image(&mut self, args: &ImageArgs) -> Result<Arc<DigitalImage>, InputError> {
        let text = self.read("image", &args.image)?;
        let at = |e| InputError::Core(args.image.clone(), e);
        let points = parse_image_points(&text).map_err(at)?;
        let adjacency = if let Some(s) = &args.adjacency {
            parse_cu_adjacency(s).map_err(at)?
        } else if let Some(s) = &args.np {
            parse_np_adjacency(s).map_err(at)?
        } else if let Some(path) = &args.explicit {
            let edges = self.read("edges", path)?;
            parse_edges(&edges, &points).map_err(|e| InputError::Core(path.clone(), e))?
        } else {
            Adjacency::Cu(1)
        };
        DigitalImage::new(points, adjacency).map(Arc::new).map_err(at)
    }

    pub fn set(&mut self, path: &Path) -> Result<PointSet, InputError> {
        let text = self.read("set", path)?;
        let at = |e| InputError::Core(path.to_path_buf(), e);
        match detect_format(&text) {
            ImageFormat::Grid => parse_grid(&text).map_err(at),
            ImageFormat::Points => Ok(parse_points(&text).map_err(at)?.into_iter().collect()),
        }
    }
}
