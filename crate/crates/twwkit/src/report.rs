//! Machine-readable run reports: ordered `key=value` lines, deterministic
//! for fixed inputs and seeds apart from the wall-time field.

use std::fmt::Display;
use std::time::Instant;

pub struct RunReport {
    entries: Vec<(String, String)>,
    started: Instant,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        let mut r = RunReport {
            entries: Vec::new(),
            started: Instant::now(),
        };
        r.push("command", command);
        r
    }

    pub fn push(&mut self, key: &str, value: impl Display) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    /// Emits the report with the wall time appended last.
    pub fn print(mut self) {
        let ms = self.started.elapsed().as_millis();
        self.push("wall_time_ms", ms);
        for (k, v) in &self.entries {
            println!("{k}={v}");
        }
    }
}

/// FNV-1a digest of input bytes, for echoing input identity into reports.
pub fn digest(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable() {
        assert_eq!(digest(b"n 2\ne 0 1\n"), digest(b"n 2\ne 0 1\n"));
        assert_ne!(digest(b"a"), digest(b"b"));
    }
}
