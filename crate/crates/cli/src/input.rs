//! Integer-set input files and seeded random sets.

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: expected a positive integer, got {text:?}")]
    Parse { line: usize, text: String },
    #[error("random set of {count} distinct values cannot fit in 1..={max}")]
    RandomRange { count: u64, max: u64 },
}

/// Parses one positive integer per line. Blank lines and lines starting
/// with `#` are skipped. The result is sorted and deduplicated.
pub fn parse_set(text: &str) -> Result<Vec<u64>, InputError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line.parse::<u64>() {
            Ok(v) if v > 0 => out.push(v),
            _ => return Err(InputError::Parse { line: i + 1, text: line.to_string() }),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn read_set(path: &Path) -> Result<Vec<u64>, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| InputError::Io { path: path.display().to_string(), source })?;
    parse_set(&text)
}

/// `count` distinct values from `1..=max`, sorted; reproducible for a given
/// seed.
pub fn random_set(count: u64, max: u64, seed: u64) -> Result<Vec<u64>, InputError> {
    if count > max {
        return Err(InputError::RandomRange { count, max });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<u64> = rand::seq::index::sample(&mut rng, max as usize, count as usize)
        .into_iter()
        .map(|i| i as u64 + 1)
        .collect();
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let set = parse_set("# header\n3\n\n1\n  2  \n# 7\n3\n").unwrap();
        assert_eq!(set, vec![1, 2, 3]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(parse_set("1\nx\n"), Err(InputError::Parse { line: 2, .. })));
        assert!(matches!(parse_set("0\n"), Err(InputError::Parse { line: 1, .. })));
        assert!(matches!(parse_set("-4\n"), Err(InputError::Parse { .. })));
        assert!(matches!(parse_set("1.5\n"), Err(InputError::Parse { .. })));
    }

    #[test]
    fn random_is_seeded() {
        let a = random_set(100, 100_000, 7).unwrap();
        assert_eq!(a, random_set(100, 100_000, 7).unwrap());
        assert_ne!(a, random_set(100, 100_000, 8).unwrap());
        assert_eq!(a.len(), 100);
        assert!(a.windows(2).all(|w| w[0] < w[1]) && a[0] >= 1 && a[99] <= 100_000);
        assert!(random_set(10, 5, 0).is_err());
    }
}
