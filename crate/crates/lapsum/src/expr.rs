//! Series mini-language:
//!
//! ```text
//! expr    := family "(" args ")" ;
//! family  := "power" | "shifted_power" | "exp" | "cos" | "sin"
//!          | "logtrig_sin" | "logtrig_cos" ;
//! args    := [ arg ("," arg)* ] ;
//! arg     := name "=" complex ;
//! complex := real | real ("+"|"-") real "i" ;
//! name    := "z" | "a" | "b" | "beta" | "c" ;
//! ```
//!
//! Errors carry the byte offset and the expected token. Parameter ranges
//! are validated through `make_summand`, so a syntactically valid
//! expression can still be rejected on domain grounds.

use crate::catalog::{make_summand, SummandSpec};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::collections::BTreeMap;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start_matches([' ', '\t']);
        self.pos = self.src.len() - trimmed.len();
    }

    // offsets in errors are 1-based columns: "power(z=2" reports the
    // missing ")" at offset 10
    fn err(&self, expected: &str) -> Error {
        Error::Parse {
            offset: self.pos + 1,
            expected: expected.to_string(),
        }
    }

    fn expect(&mut self, token: char) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len_utf8();
            Ok(())
        } else {
            Err(self.err(&format!("\"{token}\"")))
        }
    }

    fn peek(&mut self, token: char) -> bool {
        self.skip_ws();
        self.rest().starts_with(token)
    }

    /// A run of identifier characters (letters, digits, underscore).
    fn ident(&mut self, expected: &str) -> Result<&'a str> {
        self.skip_ws();
        let s = self.rest();
        let end = s
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(s.len());
        if end == 0 {
            return Err(self.err(expected));
        }
        self.pos += end;
        Ok(&s[..end])
    }

    /// A real literal: optional sign, digits, optional fraction/exponent.
    fn real(&mut self) -> Result<f64> {
        self.skip_ws();
        let s = self.rest();
        let bytes = s.as_bytes();
        let mut i = 0;
        if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            i += 1;
        }
        let digits_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if i < bytes.len() && bytes[i] == b'.' {
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
        }
        if i == digits_start {
            return Err(self.err("a number"));
        }
        if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
            let mut j = i + 1;
            if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                j += 1;
            }
            let exp_start = j;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if j > exp_start {
                i = j;
            }
        }
        let v: f64 = s[..i].parse().map_err(|_| self.err("a number"))?;
        self.pos += i;
        Ok(v)
    }

    /// complex := real | real ("+"|"-") real "i"
    fn complex(&mut self) -> Result<Complex64> {
        let re = self.real()?;
        let save = self.pos;
        self.skip_ws();
        let s = self.rest();
        let sign = if s.starts_with('+') {
            1.0
        } else if s.starts_with('-') {
            -1.0
        } else {
            self.pos = save;
            return Ok(Complex64::new(re, 0.0));
        };
        self.pos += 1;
        let im = match self.real() {
            Ok(v) => v,
            Err(_) => {
                self.pos = save;
                return Ok(Complex64::new(re, 0.0));
            }
        };
        if self.rest().starts_with('i') {
            self.pos += 1;
            Ok(Complex64::new(re, sign * im))
        } else {
            self.pos = save;
            Ok(Complex64::new(re, 0.0))
        }
    }
}

/// Parse a standalone complex literal (used for flag values as well).
pub fn parse_complex(src: &str) -> Result<Complex64> {
    let mut c = Cursor::new(src);
    let v = c.complex()?;
    c.skip_ws();
    if !c.rest().is_empty() {
        return Err(c.err("end of input"));
    }
    Ok(v)
}

fn take_arg(
    args: &mut BTreeMap<&str, Complex64>,
    family: &str,
    name: &str,
) -> Result<Complex64> {
    args.remove(name).ok_or_else(|| {
        Error::Parse {
            offset: 0,
            expected: format!("parameter \"{name}\" for family \"{family}\""),
        }
    })
}

/// Parse the series mini-language into a validated summand spec.
pub fn parse_series_expr(src: &str) -> Result<SummandSpec> {
    if src.trim().is_empty() {
        return Err(Error::Parse {
            offset: 0,
            expected: "a series expression, e.g. power(z=2)".into(),
        });
    }
    let mut c = Cursor::new(src);
    let fam_offset = {
        c.skip_ws();
        c.pos
    };
    let family = c.ident("a family name")?;
    c.expect('(')?;
    let mut args: BTreeMap<&str, Complex64> = BTreeMap::new();
    if !c.peek(')') {
        loop {
            let name_offset = {
                c.skip_ws();
                c.pos
            };
            let name = c.ident("a parameter name")?;
            if !matches!(name, "z" | "a" | "b" | "beta" | "c") {
                return Err(Error::Parse {
                    offset: name_offset + 1,
                    expected: format!("one of z, a, b, beta, c (got \"{name}\")"),
                });
            }
            c.expect('=')?;
            let value = c.complex()?;
            if args.insert(name, value).is_some() {
                return Err(Error::Parse {
                    offset: name_offset + 1,
                    expected: format!("each parameter once (duplicate \"{name}\")"),
                });
            }
            if c.peek(',') {
                c.expect(',')?;
            } else {
                break;
            }
        }
    }
    c.expect(')')?;
    c.skip_ws();
    if !c.rest().is_empty() {
        return Err(c.err("end of input"));
    }

    let spec = match family {
        "power" => SummandSpec::Power {
            z: take_arg(&mut args, family, "z")?,
        },
        "shifted_power" => SummandSpec::ShiftedPower {
            a: take_arg(&mut args, family, "a")?,
            beta: take_arg(&mut args, family, "beta")?,
        },
        "exp" => {
            let cval = take_arg(&mut args, family, "c")?;
            if cval.im != 0.0 {
                return Err(Error::Domain("exp rate c must be real".into()));
            }
            SummandSpec::Exponential { c: cval.re }
        }
        "cos" => SummandSpec::Cosine,
        "sin" => SummandSpec::Sine,
        "logtrig_sin" => SummandSpec::LogTrigSin {
            a: take_arg(&mut args, family, "a")?,
            b: take_arg(&mut args, family, "b")?,
        },
        "logtrig_cos" => SummandSpec::LogTrigCos {
            a: take_arg(&mut args, family, "a")?,
            b: take_arg(&mut args, family, "b")?,
        },
        other => {
            return Err(Error::Parse {
                offset: fam_offset + 1,
                expected: format!(
                    "one of power, shifted_power, exp, cos, sin, logtrig_sin, logtrig_cos (got \"{other}\")"
                ),
            });
        }
    };
    if let Some((name, _)) = args.iter().next() {
        return Err(Error::Parse {
            offset: 0,
            expected: format!("no parameter \"{name}\" for family \"{family}\""),
        });
    }
    make_summand(spec)
}
