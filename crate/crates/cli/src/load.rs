use std::path::Path;

use patterncost::causal::{KernelFile, KernelFileStrategy};
use patterncost::{BlockBudget, Error, MachineSpec, ValidatedMachine};

/// Error carrying its process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::PrescienceViolation { .. } => 3,
        Error::BlockTooLarge { .. } => 4,
        Error::UnifilarRequired => 5,
        Error::Io(_) => 2,
        e if e.is_validation() => 2,
        _ => 1,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: exit_code(&e), message: e.to_string() }
    }
}

impl Failure {
    pub fn in_file(path: &Path, text: &str, e: Error) -> Self {
        let code = exit_code(&e);
        let line = match &e {
            Error::Json(j) => Some(j.line()),
            Error::RowSum { state, .. } | Error::InvalidProbability { state, .. } => {
                find_line(text, &format!("\"from\": \"{state}\"")).or_else(|| find_line(text, &format!("\"{state}\"")))
            }
            Error::DuplicateLabel { label, .. } | Error::UnknownLabel { label, .. } => {
                find_line(text, &format!("\"{label}\""))
            }
            Error::Disconnected { .. } | Error::NoStates => find_line(text, "\"states\""),
            Error::EmptyAlphabet => find_line(text, "\"alphabet\""),
            Error::UnifilarMismatch { .. } => find_line(text, "\"unifilar\""),
            Error::InvalidDistribution(_) => find_line(text, "\"default_distribution\""),
            _ => None,
        };
        let message = match line {
            Some(l) => format!("{}:{l}: {e}", path.display()),
            None => format!("{}: {e}", path.display()),
        };
        Failure { code, message }
    }
}

/// 1-based line of the first occurrence of `needle`, ignoring whitespace around `:`.
fn find_line(text: &str, needle: &str) -> Option<usize> {
    let squash = |s: &str| s.replace(": ", ":").replace(" :", ":");
    let needle = squash(needle);
    text.lines().position(|l| squash(l).contains(&needle)).map(|i| i + 1)
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure { code: 2, message: format!("{}: {e}", path.display()) })
}

pub fn machine(path: &Path) -> Result<ValidatedMachine, Failure> {
    let text = read(path)?;
    MachineSpec::from_json(&text).and_then(|spec| spec.validate()).map_err(|e| Failure::in_file(path, &text, e))
}

pub fn kernel(path: &Path) -> Result<KernelFileStrategy, Failure> {
    let text = read(path)?;
    let file = KernelFile::from_json(&text).map_err(|e| Failure::in_file(path, &text, e))?;
    Ok(KernelFileStrategy::new(format!("kernel:{}", path.display()), file))
}

pub fn budget(max_words: usize) -> Result<BlockBudget, Failure> {
    if max_words == 0 {
        return Err(Failure { code: 2, message: "--block-budget must be positive".into() });
    }
    Ok(BlockBudget::new(max_words))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_are_found() {
        let text = "{\n  \"transitions\": [\n    {\"from\" : \"A\", \"p\": 1}\n  ]\n}";
        assert_eq!(find_line(text, "\"from\": \"A\""), Some(3));
        assert_eq!(find_line(text, "\"B\""), None);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::RowSum { state: "A".into(), sum: 0.9 }), 2);
        assert_eq!(exit_code(&Error::UnifilarRequired), 5);
        assert_eq!(exit_code(&Error::BlockTooLarge { k: 20, alphabet: 2, max_words: 16 }), 4);
        assert_eq!(exit_code(&Error::PrescienceViolation { state: "A".into(), deviation: 0.5, horizon: 6 }), 3);
        assert_eq!(exit_code(&Error::Identity("x".into())), 1);
    }
}
