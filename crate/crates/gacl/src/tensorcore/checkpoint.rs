//! `GACLCKPT v1` checkpoint files.
//!
//! Layout: a text header (`GACLCKPT v1`, entry count, one `name rows cols
//! offset` line per entry, `DATA`), followed by the raw little-endian `f64`
//! payload. Offsets are byte offsets into the payload. Round-trips are
//! bit-exact.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{Matrix, TensorError};

const MAGIC: &str = "GACLCKPT v1";

/// An ordered collection of named matrices. Vectors are stored as 1xN.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Checkpoint {
    entries: Vec<(String, Matrix)>,
}

impl Checkpoint {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: &str, m: Matrix) {
        debug_assert!(
            !name.contains(char::is_whitespace),
            "entry names must not contain whitespace"
        );
        debug_assert!(
            self.entries.iter().all(|(n, _)| n != name),
            "duplicate checkpoint entry {name}"
        );
        self.entries.push((name.to_string(), m));
    }

    pub fn push_vec(&mut self, name: &str, v: &[f64]) {
        self.push(name, Matrix::from_row(v));
    }

    pub fn get(&self, name: &str) -> Option<&Matrix> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn require(&self, name: &str) -> Result<&Matrix, TensorError> {
        self.get(name)
            .ok_or_else(|| TensorError::Checkpoint(format!("missing entry {name}")))
    }

    pub fn require_vec(&self, name: &str) -> Result<Vec<f64>, TensorError> {
        Ok(self.require(name)?.data().to_vec())
    }

    pub fn entries(&self) -> &[(String, Matrix)] {
        &self.entries
    }

    pub fn write_to(&self, w: &mut impl Write) -> Result<(), TensorError> {
        writeln!(w, "{MAGIC}")?;
        writeln!(w, "{}", self.entries.len())?;
        let mut offset = 0usize;
        for (name, m) in &self.entries {
            writeln!(w, "{} {} {} {}", name, m.rows(), m.cols(), offset)?;
            offset += m.data().len() * 8;
        }
        writeln!(w, "DATA")?;
        for (_, m) in &self.entries {
            for v in m.data() {
                w.write_all(&v.to_le_bytes())?;
            }
        }
        Ok(())
    }

    pub fn read_from(r: &mut impl Read) -> Result<Self, TensorError> {
        let mut br = BufReader::new(r);
        let mut line = String::new();

        br.read_line(&mut line)?;
        if line.trim_end() != MAGIC {
            return Err(TensorError::Checkpoint(format!(
                "bad magic line {:?}",
                line.trim_end()
            )));
        }
        line.clear();
        br.read_line(&mut line)?;
        let n: usize = line
            .trim()
            .parse()
            .map_err(|_| TensorError::Checkpoint(format!("bad entry count {:?}", line.trim())))?;

        let mut manifest = Vec::with_capacity(n);
        for _ in 0..n {
            line.clear();
            br.read_line(&mut line)?;
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 {
                return Err(TensorError::Checkpoint(format!(
                    "bad manifest line {:?}",
                    line.trim_end()
                )));
            }
            let parse = |s: &str| -> Result<usize, TensorError> {
                s.parse()
                    .map_err(|_| TensorError::Checkpoint(format!("bad number {s:?}")))
            };
            manifest.push((
                parts[0].to_string(),
                parse(parts[1])?,
                parse(parts[2])?,
                parse(parts[3])?,
            ));
        }
        line.clear();
        br.read_line(&mut line)?;
        if line.trim_end() != "DATA" {
            return Err(TensorError::Checkpoint("missing DATA separator".into()));
        }

        let mut payload = Vec::new();
        br.read_to_end(&mut payload)?;
        let mut entries = Vec::with_capacity(n);
        for (name, rows, cols, offset) in manifest {
            let bytes = rows * cols * 8;
            let end = offset + bytes;
            if end > payload.len() {
                return Err(TensorError::Checkpoint(format!(
                    "entry {name} extends past payload ({end} > {})",
                    payload.len()
                )));
            }
            let data: Vec<f64> = payload[offset..end]
                .chunks_exact(8)
                .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
                .collect();
            entries.push((name, Matrix::from_vec(rows, cols, data)?));
        }
        Ok(Checkpoint { entries })
    }

    pub fn save(&self, path: &Path) -> Result<(), TensorError> {
        let mut w = BufWriter::new(File::create(path)?);
        self.write_to(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, TensorError> {
        let mut f = File::open(path)?;
        Self::read_from(&mut f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(ckpt: &Checkpoint) -> Checkpoint {
        let mut buf = Vec::new();
        ckpt.write_to(&mut buf).unwrap();
        Checkpoint::read_from(&mut buf.as_slice()).unwrap()
    }

    #[test]
    fn roundtrip_is_bit_exact() {
        let mut ckpt = Checkpoint::new();
        ckpt.push(
            "policy/0/w",
            Matrix::from_vec(2, 3, vec![1.5, -0.25, 1e-300, f64::MIN_POSITIVE, 0.1 + 0.2, -0.0])
                .unwrap(),
        );
        ckpt.push_vec("policy/log_std", &[0.3, f64::EPSILON]);
        let back = roundtrip(&ckpt);
        assert_eq!(ckpt, back);
        // Same bytes when re-serialized.
        let mut a = Vec::new();
        let mut b = Vec::new();
        ckpt.write_to(&mut a).unwrap();
        back.write_to(&mut b).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_magic() {
        let data = b"NOTACKPT v9\n0\nDATA\n";
        assert!(Checkpoint::read_from(&mut data.as_slice()).is_err());
    }

    #[test]
    fn rejects_truncated_payload() {
        let mut ckpt = Checkpoint::new();
        ckpt.push_vec("x", &[1.0, 2.0]);
        let mut buf = Vec::new();
        ckpt.write_to(&mut buf).unwrap();
        buf.truncate(buf.len() - 4);
        assert!(Checkpoint::read_from(&mut buf.as_slice()).is_err());
    }

    #[test]
    fn missing_entry_reported() {
        let ckpt = Checkpoint::new();
        assert!(ckpt.require("nope").is_err());
    }
}
