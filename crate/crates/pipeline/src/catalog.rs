//! Known benchmark networks with their published summary statistics.

use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PublishedStats {
    pub nodes: usize,
    pub edges: usize,
    pub mean_degree: f64,
    pub mean_sq_degree: f64,
    pub epidemic_threshold: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CatalogEntry {
    pub name: &'static str,
    /// Direct download of a KONECT `.tar.bz2` archive, when one exists.
    pub url: Option<&'static str>,
    pub published: PublishedStats,
    /// Desk-scale networks; the rest need `--allow-large`.
    pub small: bool,
}

const fn stats(nodes: usize, edges: usize, k: f64, k2: f64, lc: f64) -> PublishedStats {
    PublishedStats {
        nodes,
        edges,
        mean_degree: k,
        mean_sq_degree: k2,
        epidemic_threshold: lc,
    }
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "amazon",
        url: Some("http://konect.cc/files/download.tsv.com-amazon.tar.bz2"),
        published: stats(334863, 925872, 5.5, 63.7, 0.094),
        small: false,
    },
    CatalogEntry {
        name: "cond-mat",
        url: None,
        published: stats(27519, 116181, 8.4, 188.1, 0.047),
        small: false,
    },
    CatalogEntry {
        name: "email-enron",
        url: None,
        published: stats(36692, 183831, 10.0, 1402.0, 0.0071),
        small: false,
    },
    CatalogEntry {
        name: "facebook",
        url: None,
        published: stats(63731, 817035, 25.6, 2256.5, 0.011),
        small: false,
    },
    CatalogEntry {
        name: "arenas-email",
        url: Some("http://konect.cc/files/download.tsv.arenas-email.tar.bz2"),
        published: stats(1133, 5451, 9.6, 179.8, 0.0564),
        small: true,
    },
    CatalogEntry {
        name: "arenas-pgp",
        url: Some("http://konect.cc/files/download.tsv.arenas-pgp.tar.bz2"),
        published: stats(10680, 24316, 4.5, 85.9, 0.0553),
        small: true,
    },
    CatalogEntry {
        name: "as20000102",
        url: Some("http://konect.cc/files/download.tsv.as20000102.tar.bz2"),
        published: stats(6474, 12572, 3.9, 640.0, 0.006),
        small: true,
    },
    CatalogEntry {
        name: "ca-AstroPh",
        url: Some("http://konect.cc/files/download.tsv.ca-AstroPh.tar.bz2"),
        published: stats(18771, 198050, 21.1, 1379.0, 0.015),
        small: true,
    },
    CatalogEntry {
        name: "maayan-vidal",
        url: Some("http://konect.cc/files/download.tsv.maayan-vidal.tar.bz2"),
        published: stats(3023, 6149, 4.06, 62.8, 0.069),
        small: true,
    },
    CatalogEntry {
        name: "petster-hamster",
        url: Some("http://konect.cc/files/download.tsv.petster-hamster.tar.bz2"),
        published: stats(2426, 16631, 13.7, 582.9, 0.024),
        small: true,
    },
    CatalogEntry {
        name: "reactome",
        url: Some("http://konect.cc/files/download.tsv.reactome.tar.bz2"),
        published: stats(6229, 146160, 43.71, 6708.3, 0.007),
        small: true,
    },
    CatalogEntry {
        name: "maayan-Stelzl",
        url: Some("http://konect.cc/files/download.tsv.maayan-Stelzl.tar.bz2"),
        published: stats(1615, 3106, 3.8, 65.6, 0.061),
        small: true,
    },
    CatalogEntry {
        name: "vidal",
        url: None,
        published: stats(2783, 6007, 4.3, 68.1, 0.067),
        small: true,
    },
    CatalogEntry {
        name: "yeast",
        url: None,
        published: stats(2375, 11693, 9.8, 336.9, 0.030),
        small: true,
    },
];

/// Case-insensitive lookup by name.
pub fn lookup(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name.eq_ignore_ascii_case(name))
}

/// Where a network's edge list is expected under `data_dir`. The first
/// existing candidate wins; otherwise `<data_dir>/<name>.txt`.
pub fn local_path(data_dir: &Path, name: &str) -> PathBuf {
    let candidates = [
        data_dir.join(format!("{name}.txt")),
        data_dir.join(format!("{name}.edges")),
        data_dir.join(format!("{name}.csv")),
        data_dir.join(format!("out.{name}")),
        data_dir.join(name).join(format!("out.{name}")),
    ];
    candidates
        .iter()
        .find(|p| p.is_file())
        .cloned()
        .unwrap_or_else(|| candidates[0].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_thresholds_follow_from_moments() {
        // printed thresholds are truncated, so allow one unit in the last digit
        for e in CATALOG {
            let p = e.published;
            let lc = p.mean_degree / (p.mean_sq_degree - p.mean_degree);
            let digits = format!("{}", p.epidemic_threshold).split('.').nth(1).map_or(0, str::len);
            let unit = 10f64.powi(-(digits as i32));
            assert!((lc - p.epidemic_threshold).abs() < unit, "{}: {lc} vs {}", e.name, p.epidemic_threshold);
        }
    }

    #[test]
    fn lookup_ignores_case() {
        assert_eq!(lookup("Yeast").unwrap().name, "yeast");
        assert!(lookup("nope").is_none());
    }

    #[test]
    fn local_path_prefers_existing_files() {
        let dir = tempfile::tempdir().unwrap();
        assert_eq!(local_path(dir.path(), "x"), dir.path().join("x.txt"));
        std::fs::create_dir(dir.path().join("x")).unwrap();
        std::fs::write(dir.path().join("x").join("out.x"), "1 2\n").unwrap();
        assert_eq!(local_path(dir.path(), "x"), dir.path().join("x").join("out.x"));
    }
}
