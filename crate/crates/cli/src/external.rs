//! Compressor backed by an external program.

use std::io::Write;
use std::process::{Command, Stdio};

use effdim_core::algorithmic::{Bits, Compressor};
use effdim_core::{Error, Result};

/// Pipes the packed input bytes through `program args…` and takes the
/// output bytes as the code. Injectivity and the domain/image tests cannot
/// be verified, so the adapter reports itself as not certified and decodes
/// nothing.
#[derive(Debug, Clone)]
pub struct External {
    id: String,
    program: String,
    args: Vec<String>,
}

impl External {
    /// `command` is split on whitespace.
    pub fn new(command: &str) -> Option<Self> {
        let mut parts = command.split_whitespace().map(str::to_owned);
        let program = parts.next()?;
        Some(Self { id: format!("external:{command}"), program, args: parts.collect() })
    }
}

impl Compressor for External {
    fn id(&self) -> &str {
        &self.id
    }

    fn encode(&self, s: &Bits) -> Result<Bits> {
        let fail = |e: std::io::Error| Error::InvalidArgument(format!("external compressor failed: {e}"));
        let mut child = Command::new(&self.program)
            .args(&self.args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(fail)?;
        let input = s.to_bytes();
        // write from a thread so large outputs cannot deadlock the pipe
        let mut stdin = child.stdin.take().expect("stdin is piped");
        let writer = std::thread::spawn(move || stdin.write_all(&input));
        let out = child.wait_with_output().map_err(fail)?;
        writer.join().expect("writer thread").map_err(fail)?;
        if !out.status.success() {
            return Err(Error::InvalidArgument(format!("external compressor exited with {}", out.status)));
        }
        Ok(Bits::from_bytes(&out.stdout))
    }

    fn decode(&self, _t: &Bits) -> Option<Bits> {
        None
    }

    fn certified(&self) -> bool {
        false
    }
}
