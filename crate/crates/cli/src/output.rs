use std::fs;
use std::io::Write;

use serde::Serialize;

use crate::args::OutputArgs;
use crate::error::CliError;

/// Bit strings longer than this are shortened in text output.
pub const TEXT_BITS_LIMIT: usize = 256;

pub fn elide_bits(bits: &str) -> String {
    if bits.len() <= TEXT_BITS_LIMIT {
        return bits.to_owned();
    }
    let keep = TEXT_BITS_LIMIT / 2;
    format!("{}...{} ({} alleles)", &bits[..keep], &bits[bits.len() - keep..], bits.len())
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn to_csv<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

pub fn emit(output: &OutputArgs, rendered: &str) -> Result<(), CliError> {
    match &output.out {
        Some(path) => fs::write(path, rendered)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(rendered.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elision_keeps_short_strings() {
        let short = "01".repeat(128);
        assert_eq!(elide_bits(&short), short);
        let long = "1".repeat(1000);
        let e = elide_bits(&long);
        assert!(e.len() < 300);
        assert!(e.ends_with("(1000 alleles)"));
    }
}
