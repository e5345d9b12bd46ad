use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Output units for work values. Internally everything is bits.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Units {
    #[default]
    Bits,
    /// Joules at the given temperature in kelvin: one bit is k_B T ln 2.
    Physical { temperature: f64 },
}

impl Units {
    pub fn physical(temperature: f64) -> Result<Self> {
        if !(temperature.is_finite() && temperature > 0.0) {
            return Err(Error::Units(format!("temperature must be positive, got {temperature}")));
        }
        Ok(Units::Physical { temperature })
    }

    /// Conversion factor from bits.
    pub fn per_bit(&self) -> f64 {
        match *self {
            Units::Bits => 1.0,
            Units::Physical { temperature } => BOLTZMANN * temperature * std::f64::consts::LN_2,
        }
    }

    pub fn from_bits(&self, bits: f64) -> f64 {
        bits * self.per_bit()
    }

    pub fn to_bits(&self, value: f64) -> f64 {
        value / self.per_bit()
    }

    /// Renders a value at the fixed output precision: 9 decimals for bits, 9 significant
    /// decimals in scientific notation for joules.
    pub fn format(&self, value: f64) -> String {
        match self {
            Units::Bits => {
                let s = format!("{value:.9}");
                // no negative zero
                if s.trim_start_matches('-').bytes().all(|b| b == b'0' || b == b'.') {
                    s.trim_start_matches('-').to_string()
                } else {
                    s
                }
            }
            Units::Physical { .. } => format!("{value:.9e}"),
        }
    }
}

impl fmt::Display for Units {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Units::Bits => write!(f, "bits"),
            Units::Physical { temperature } => write!(f, "J@{temperature}K"),
        }
    }
}

impl FromStr for Units {
    type Err = Error;

    /// Parses the `Display` form: `bits` or `J@<kelvin>K`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "bits" {
            return Ok(Units::Bits);
        }
        let t = s
            .strip_prefix("J@")
            .and_then(|r| r.strip_suffix('K'))
            .and_then(|t| t.parse::<f64>().ok())
            .ok_or_else(|| Error::Units(format!("unrecognized units `{s}`")))?;
        Units::physical(t)
    }
}
