//! `--config` files: flat `key = value` lines that stand in for flags.

use std::ffi::OsString;
use std::fs;

/// Returns the path given to `--config`, if any.
fn config_path(args: &[OsString]) -> Option<String> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let a = a.to_string_lossy();
        if a == "--config" {
            return it.next().map(|p| p.to_string_lossy().into_owned());
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

/// Turns file lines into flags. `#` starts a comment; `key = true` becomes a
/// bare switch and `key = false` is dropped.
pub fn parse_config(text: &str) -> Result<Vec<String>, String> {
    let mut flags = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("config line {}: expected key = value, got {raw:?}", k + 1));
        };
        let key = key.trim().trim_start_matches("--");
        let value = value.trim();
        if key.is_empty() || key == "config" {
            return Err(format!("config line {}: invalid key {key:?}", k + 1));
        }
        match value {
            "true" => flags.push(format!("--{key}")),
            "false" => {}
            _ => {
                flags.push(format!("--{key}"));
                flags.push(value.to_string());
            }
        }
    }
    Ok(flags)
}

/// Inserts flags from the config file right after the subcommand name, so
/// that flags given on the command line (which come later) take precedence.
pub fn expand(args: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = fs::read_to_string(&path).map_err(|e| format!("cannot read config {path}: {e}"))?;
    let flags = parse_config(&text)?;
    // first argument that is not a flag is the subcommand
    let Some(pos) = args.iter().skip(1).position(|a| !a.to_string_lossy().starts_with('-')) else {
        return Ok(args);
    };
    let at = pos + 2;
    let mut out: Vec<OsString> = args[..at].to_vec();
    out.extend(flags.into_iter().map(OsString::from));
    out.extend(args[at..].iter().cloned());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs_and_switches() {
        let flags = parse_config("# scan\nreps = 10\nseed=3 # trailing\ntimestamp = true\nquiet = false\n").unwrap();
        assert_eq!(flags, vec!["--reps", "10", "--seed", "3", "--timestamp"]);
        assert!(parse_config("reps 10").is_err());
        assert!(parse_config("config = x").is_err());
    }

    #[test]
    fn inserts_after_subcommand() {
        let dir = std::env::temp_dir().join(format!("spheremc-config-{}", std::process::id()));
        fs::write(&dir, "reps = 5\n").unwrap();
        let args: Vec<OsString> = ["spheremc", "scan", "--config", dir.to_str().unwrap(), "--reps", "7"]
            .iter()
            .map(OsString::from)
            .collect();
        let out: Vec<String> = expand(args).unwrap().iter().map(|a| a.to_string_lossy().into_owned()).collect();
        assert_eq!(&out[..4], &["spheremc", "scan", "--reps", "5"]);
        assert_eq!(out.last().unwrap(), "7");
        fs::remove_file(dir).unwrap();
    }
}
