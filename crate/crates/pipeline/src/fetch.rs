//! Dataset download with content pinning.
//!
//! Every fetched file is hashed and recorded in a JSON lockfile keyed by
//! URL. A later fetch of the same URL must reproduce the recorded hash.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{self, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::PipelineError;

pub const LOCKFILE: &str = "datasets.lock.json";

#[derive(Clone, Debug, PartialEq)]
pub struct FetchOutcome {
    pub archive: PathBuf,
    /// Edge list ready for loading.
    pub edges: PathBuf,
    pub sha256: String,
    pub downloaded: bool,
}

pub fn sha256_file(path: &Path) -> Result<String, PipelineError> {
    let mut f = BufReader::new(File::open(path).map_err(|e| PipelineError::io(path, e))?);
    let mut h = Sha256::new();
    let mut buf = [0u8; 1 << 16];
    loop {
        let n = f.read(&mut buf).map_err(|e| PipelineError::io(path, e))?;
        if n == 0 {
            break;
        }
        h.update(&buf[..n]);
    }
    Ok(hex::encode(h.finalize()))
}

fn read_lock(path: &Path) -> Result<BTreeMap<String, String>, PipelineError> {
    match fs::read_to_string(path) {
        Ok(text) => serde_json::from_str(&text).map_err(|e| PipelineError::Format {
            what: "lockfile".into(),
            path: path.to_path_buf(),
            message: e.to_string(),
        }),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(BTreeMap::new()),
        Err(e) => Err(PipelineError::io(path, e)),
    }
}

fn write_lock(path: &Path, lock: &BTreeMap<String, String>) -> Result<(), PipelineError> {
    let mut text = serde_json::to_string_pretty(lock).expect("string map serializes");
    text.push('\n');
    fs::write(path, text).map_err(|e| PipelineError::io(path, e))
}

fn file_name_of(url: &str) -> &str {
    url.rsplit('/').next().filter(|s| !s.is_empty()).unwrap_or("download")
}

fn download(url: &str, dest: &Path) -> Result<(), PipelineError> {
    let fetch_err = |message: String| PipelineError::Fetch {
        url: url.to_string(),
        message,
    };
    let response = ureq::get(url).call().map_err(|e| fetch_err(e.to_string()))?;
    let mut reader = response.into_body().into_reader();
    let mut out = File::create(dest).map_err(|e| PipelineError::io(dest, e))?;
    io::copy(&mut reader, &mut out).map_err(|e| fetch_err(e.to_string()))?;
    out.flush().map_err(|e| PipelineError::io(dest, e))
}

/// Downloads `url` into `dir` unless a copy with the pinned hash is already
/// there, then prepares `<dir>/<name>.txt`.
pub fn fetch_dataset(url: &str, dir: &Path, name: &str) -> Result<FetchOutcome, PipelineError> {
    fs::create_dir_all(dir).map_err(|e| PipelineError::io(dir, e))?;
    let lock_path = dir.join(LOCKFILE);
    let mut lock = read_lock(&lock_path)?;
    let archive = dir.join(file_name_of(url));
    let pinned = lock.get(url).cloned();

    let mut downloaded = false;
    let have_local = archive.is_file() && pinned.is_some();
    if !have_local {
        let partial = archive.with_extension("part");
        download(url, &partial)?;
        fs::rename(&partial, &archive).map_err(|e| PipelineError::io(&archive, e))?;
        downloaded = true;
    }
    let sha256 = sha256_file(&archive)?;
    if let Some(expected) = pinned {
        if expected != sha256 {
            return Err(PipelineError::Integrity {
                url: url.to_string(),
                expected,
                actual: sha256,
            });
        }
    } else {
        lock.insert(url.to_string(), sha256.clone());
        write_lock(&lock_path, &lock)?;
    }
    let edges = prepare_edge_list(&archive, dir, name)?;
    Ok(FetchOutcome {
        archive,
        edges,
        sha256,
        downloaded,
    })
}

/// Unpacks the `out.*` member of a KONECT `.tar.bz2`; other files are used
/// as they are.
pub fn prepare_edge_list(archive: &Path, dir: &Path, name: &str) -> Result<PathBuf, PipelineError> {
    let file_name = archive.file_name().and_then(|s| s.to_str()).unwrap_or_default();
    if !file_name.ends_with(".tar.bz2") {
        return Ok(archive.to_path_buf());
    }
    let target = dir.join(format!("{name}.txt"));
    let f = File::open(archive).map_err(|e| PipelineError::io(archive, e))?;
    let mut tar = tar::Archive::new(bzip2::read::BzDecoder::new(BufReader::new(f)));
    let entries = tar.entries().map_err(|e| PipelineError::io(archive, e))?;
    for entry in entries {
        let mut entry = entry.map_err(|e| PipelineError::io(archive, e))?;
        let is_edges = entry
            .path()
            .ok()
            .and_then(|p| p.file_name().map(|n| n.to_string_lossy().starts_with("out.")))
            .unwrap_or(false);
        if is_edges {
            let mut out = File::create(&target).map_err(|e| PipelineError::io(&target, e))?;
            io::copy(&mut entry, &mut out).map_err(|e| PipelineError::io(&target, e))?;
            return Ok(target);
        }
    }
    Err(PipelineError::Format {
        what: "archive".into(),
        path: archive.to_path_buf(),
        message: "no out.* edge list inside".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unreachable_host_is_a_fetch_error() {
        let dir = tempfile::tempdir().unwrap();
        let err = fetch_dataset("http://127.0.0.1:9/none.tar.bz2", dir.path(), "none").unwrap_err();
        assert!(matches!(err, PipelineError::Fetch { .. }), "{err}");
    }

    #[test]
    fn pinned_local_copy_is_not_refetched() {
        let dir = tempfile::tempdir().unwrap();
        let url = "http://127.0.0.1:9/toy.txt";
        let archive = dir.path().join("toy.txt");
        fs::write(&archive, "1 2\n2 3\n").unwrap();
        let hash = sha256_file(&archive).unwrap();
        write_lock(&dir.path().join(LOCKFILE), &BTreeMap::from([(url.to_string(), hash.clone())])).unwrap();

        let out = fetch_dataset(url, dir.path(), "toy").unwrap();
        assert!(!out.downloaded);
        assert_eq!(out.sha256, hash);
        assert_eq!(out.edges, archive);

        fs::write(&archive, "1 2\n").unwrap();
        let err = fetch_dataset(url, dir.path(), "toy").unwrap_err();
        assert!(matches!(err, PipelineError::Integrity { .. }));
    }

    #[test]
    fn konect_archives_are_unpacked() {
        let dir = tempfile::tempdir().unwrap();
        let archive = dir.path().join("download.tsv.toy.tar.bz2");
        {
            let f = File::create(&archive).unwrap();
            let enc = bzip2::write::BzEncoder::new(f, bzip2::Compression::fast());
            let mut builder = tar::Builder::new(enc);
            let body = b"% sym unweighted\n1 2\n2 3\n";
            let mut header = tar::Header::new_gnu();
            header.set_size(1);
            header.set_mode(0o644);
            header.set_cksum();
            builder.append_data(&mut header, "toy/README.toy", &b"x"[..]).unwrap();
            let mut header = tar::Header::new_gnu();
            header.set_size(body.len() as u64);
            header.set_mode(0o644);
            header.set_cksum();
            builder.append_data(&mut header, "toy/out.toy", &body[..]).unwrap();
            builder.into_inner().unwrap().finish().unwrap();
        }
        let edges = prepare_edge_list(&archive, dir.path(), "toy").unwrap();
        assert_eq!(fs::read_to_string(edges).unwrap(), "% sym unweighted\n1 2\n2 3\n");
    }
}
