//! The signal-spec mini-language used by every subcommand:
//!
//! ```text
//! dc:<level>
//! sine:offset=<o>,amp=<a>,cycles=<c>     (keys optional, defaults 0.5/0.5/1)
//! exp
//! ecg:synthetic,beats=<k>                (beats optional, default 8)
//! ecg:<path>
//! ```

use std::fmt;

use rampadc::signal::SignalSource;

pub const DEFAULT_ECG_BEATS: u32 = 8;

/// Parse failure with the byte position of the offending fragment.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid signal spec at byte {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for SpecError {}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, SpecError> {
    Err(SpecError {
        pos,
        msg: msg.into(),
    })
}

/// Parse a signal spec string into a [`SignalSource`].
pub fn parse_signal_spec(input: &str) -> Result<SignalSource, SpecError> {
    let (scheme, rest, rest_pos) = match input.find(':') {
        Some(i) => (&input[..i], Some(&input[i + 1..]), i + 1),
        None => (input, None, input.len()),
    };
    match scheme {
        "dc" => {
            let body = match rest {
                Some(b) if !b.is_empty() => b,
                _ => return err(rest_pos, "dc needs a level, e.g. dc:0.25"),
            };
            let level: f64 = body.parse().map_err(|_| SpecError {
                pos: rest_pos,
                msg: format!("`{body}` is not a number"),
            })?;
            SignalSource::dc(level).map_err(|e| SpecError {
                pos: rest_pos,
                msg: e.to_string(),
            })
        }
        "sine" => {
            let mut offset = 0.5;
            let mut amplitude = 0.5;
            let mut cycles = 1.0;
            if let Some(body) = rest {
                let mut pos = rest_pos;
                for part in body.split(',') {
                    if part.is_empty() {
                        return err(pos, "empty sine parameter");
                    }
                    let eq = match part.find('=') {
                        Some(i) => i,
                        None => return err(pos, format!("`{part}` is not key=value")),
                    };
                    let key = &part[..eq];
                    let value_pos = pos + eq + 1;
                    let value: f64 = part[eq + 1..].parse().map_err(|_| SpecError {
                        pos: value_pos,
                        msg: format!("`{}` is not a number", &part[eq + 1..]),
                    })?;
                    match key {
                        "offset" => offset = value,
                        "amp" => amplitude = value,
                        "cycles" => cycles = value,
                        other => {
                            return err(
                                pos,
                                format!(
                                    "unknown sine key `{other}` (expected offset, amp, cycles)"
                                ),
                            )
                        }
                    }
                    pos += part.len() + 1;
                }
            }
            SignalSource::sine(offset, amplitude, cycles).map_err(|e| SpecError {
                pos: rest_pos,
                msg: e.to_string(),
            })
        }
        "exp" => match rest {
            Some(b) if !b.is_empty() => err(rest_pos, "exp takes no parameters"),
            _ => Ok(SignalSource::exponential()),
        },
        "ecg" => {
            let body = match rest {
                Some(b) if !b.is_empty() => b,
                _ => return err(rest_pos, "ecg needs a file path or `synthetic`"),
            };
            if body == "synthetic" || body.starts_with("synthetic,") {
                let mut beats = DEFAULT_ECG_BEATS;
                if let Some(params) = body.strip_prefix("synthetic,") {
                    let params_pos = rest_pos + "synthetic,".len();
                    match params.strip_prefix("beats=") {
                        Some(v) => {
                            beats = v.parse().map_err(|_| SpecError {
                                pos: params_pos + "beats=".len(),
                                msg: format!("`{v}` is not a beat count"),
                            })?;
                        }
                        None => {
                            return err(
                                params_pos,
                                format!("unknown ecg parameter `{params}` (expected beats=<k>)"),
                            )
                        }
                    }
                }
                SignalSource::synthetic_ecg(beats).map_err(|e| SpecError {
                    pos: rest_pos,
                    msg: e.to_string(),
                })
            } else {
                SignalSource::load_table(body).map_err(|e| SpecError {
                    pos: rest_pos,
                    msg: e.to_string(),
                })
            }
        }
        other => err(
            0,
            format!("unknown signal kind `{other}` (expected dc, sine, exp, ecg)"),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_kind() {
        assert_eq!(parse_signal_spec("dc:0.25").unwrap().to_string(), "dc:0.25");
        assert_eq!(
            parse_signal_spec("sine:offset=0.5,amp=0.5,cycles=1")
                .unwrap()
                .to_string(),
            "sine:offset=0.5,amp=0.5,cycles=1"
        );
        assert_eq!(parse_signal_spec("exp").unwrap().to_string(), "exp");
        assert!(parse_signal_spec("ecg:synthetic").unwrap().is_table());
        assert!(parse_signal_spec("ecg:synthetic,beats=3")
            .unwrap()
            .is_table());
    }

    #[test]
    fn sine_defaults_and_partial_keys() {
        let full = parse_signal_spec("sine:offset=0.5,amp=0.5,cycles=1").unwrap();
        assert_eq!(parse_signal_spec("sine").unwrap(), full);
        assert_eq!(parse_signal_spec("sine:cycles=1").unwrap(), full);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_signal_spec("dc:abc").unwrap_err();
        assert_eq!(e.pos, 3);
        let e = parse_signal_spec("sine:offset=0.5,amq=0.3").unwrap_err();
        assert_eq!(e.pos, 16);
        let e = parse_signal_spec("sine:offset=zz").unwrap_err();
        assert_eq!(e.pos, 12);
        let e = parse_signal_spec("blob:1").unwrap_err();
        assert_eq!(e.pos, 0);
        let e = parse_signal_spec("ecg:synthetic,beat=3").unwrap_err();
        assert_eq!(e.pos, 14);
        assert!(e.to_string().contains("at byte 14"));
    }

    #[test]
    fn rejects_malformed_specs() {
        assert!(parse_signal_spec("dc:").is_err());
        assert!(parse_signal_spec("dc:2.0").is_err()); // level outside [0, 1]
        assert!(parse_signal_spec("exp:1").is_err());
        assert!(parse_signal_spec("ecg:").is_err());
        assert!(parse_signal_spec("ecg:synthetic,beats=0").is_err());
        assert!(parse_signal_spec("").is_err());
    }
}
