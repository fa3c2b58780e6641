use std::fmt::Write as _;

use super::{
    CavpCase, CavpError, CavpFile, CavpGroup, DeclaredLens, Header, ParseErrorKind, ReseedInput,
};
use crate::encoding::{from_hex, to_hex};

/// The number of generate calls in every CAVP DRBG case.
pub(crate) const CALLS_PER_CASE: usize = 2;

fn err(line: usize, kind: ParseErrorKind) -> CavpError {
    CavpError::Parse { line, kind }
}

/// Header lines seen so far for a group whose first case has not started.
struct PendingGroup {
    line: usize,
    headers: Vec<Header>,
}

impl PendingGroup {
    /// A group with no cases ends where the next one begins: at a tag
    /// following parameters, or at a repeated parameter.
    fn starts_new_group(&self, next: &Header) -> bool {
        match next {
            Header::Tag(_) => self
                .headers
                .iter()
                .any(|h| matches!(h, Header::Param { .. })),
            Header::Param { key, .. } => self
                .headers
                .iter()
                .any(|h| matches!(h, Header::Param { key: k, .. } if k == key)),
        }
    }

    fn finish(self) -> Result<CavpGroup, CavpError> {
        let line = self.line;
        let mechanism = self
            .headers
            .iter()
            .find_map(|h| match h {
                Header::Tag(t) => Some(t.clone()),
                Header::Param { .. } => None,
            })
            .ok_or(err(line, ParseErrorKind::MissingHeader("mechanism tag")))?;

        let param = |key: &'static str| -> Result<&str, CavpError> {
            self.headers
                .iter()
                .find_map(|h| match h {
                    Header::Param { key: k, value } if k == key => Some(value.as_str()),
                    _ => None,
                })
                .ok_or(err(line, ParseErrorKind::MissingHeader(key)))
        };
        let bad = |key: &str, value: &str| {
            err(
                line,
                ParseErrorKind::BadHeaderValue {
                    key: key.to_string(),
                    value: value.to_string(),
                },
            )
        };
        let bits = |key: &'static str| -> Result<usize, CavpError> {
            let v = param(key)?;
            v.parse().map_err(|_| bad(key, v))
        };

        let pr = param("PredictionResistance")?;
        let prediction_resistance = match pr.to_ascii_lowercase().as_str() {
            "true" => true,
            "false" => false,
            _ => return Err(bad("PredictionResistance", pr)),
        };
        let lens = DeclaredLens {
            entropy_input: bits("EntropyInputLen")?,
            nonce: bits("NonceLen")?,
            personalization: bits("PersonalizationStringLen")?,
            additional_input: bits("AdditionalInputLen")?,
            returned_bits: bits("ReturnedBitsLen")?,
        };
        Ok(CavpGroup {
            mechanism,
            prediction_resistance,
            lens,
            headers: self.headers,
            cases: Vec::new(),
        })
    }
}

#[derive(Default)]
struct CaseBuilder {
    line: usize,
    count: u32,
    entropy_input: Option<Vec<u8>>,
    nonce: Option<Vec<u8>>,
    personalization: Option<Vec<u8>>,
    entropy_reseed: Option<Vec<u8>>,
    additional_reseed: Option<Vec<u8>>,
    additional_inputs: Vec<Vec<u8>>,
    entropy_pr: Vec<Vec<u8>>,
    returned_bits: Option<Vec<u8>>,
    extra: Vec<(String, Vec<u8>)>,
}

impl CaseBuilder {
    fn field(
        &mut self,
        line: usize,
        key: &str,
        value: Vec<u8>,
        lens: &DeclaredLens,
    ) -> Result<(), CavpError> {
        let declared = match key {
            "EntropyInput" | "EntropyInputReseed" | "EntropyInputPR" => Some(lens.entropy_input),
            "Nonce" => Some(lens.nonce),
            "PersonalizationString" => Some(lens.personalization),
            "AdditionalInput" | "AdditionalInputReseed" => Some(lens.additional_input),
            "ReturnedBits" => Some(lens.returned_bits),
            _ => None,
        };
        if let Some(declared_bits) = declared {
            if value.len() * 8 != declared_bits {
                return Err(err(
                    line,
                    ParseErrorKind::LengthMismatch {
                        field: key.to_string(),
                        declared_bits,
                        actual_bits: value.len() * 8,
                    },
                ));
            }
        }
        let slot = match key {
            "EntropyInput" => &mut self.entropy_input,
            "Nonce" => &mut self.nonce,
            "PersonalizationString" => &mut self.personalization,
            "EntropyInputReseed" => &mut self.entropy_reseed,
            "AdditionalInputReseed" => &mut self.additional_reseed,
            "ReturnedBits" => &mut self.returned_bits,
            "AdditionalInput" => {
                self.additional_inputs.push(value);
                return Ok(());
            }
            "EntropyInputPR" => {
                self.entropy_pr.push(value);
                return Ok(());
            }
            _ => {
                self.extra.push((key.to_string(), value));
                return Ok(());
            }
        };
        if slot.is_some() {
            return Err(err(
                line,
                ParseErrorKind::Malformed(format!("repeated field {key}")),
            ));
        }
        *slot = Some(value);
        Ok(())
    }

    fn finish(self, prediction_resistance: bool) -> Result<CavpCase, CavpError> {
        let line = self.line;
        let need = |v: Option<Vec<u8>>, name: &'static str| {
            v.ok_or(err(line, ParseErrorKind::MissingField(name)))
        };
        let check_count = |field: &'static str, expected: usize, found: usize| {
            if expected == found {
                Ok(())
            } else {
                Err(err(
                    line,
                    ParseErrorKind::FieldCount {
                        field,
                        expected,
                        found,
                    },
                ))
            }
        };
        check_count(
            "AdditionalInput",
            CALLS_PER_CASE,
            self.additional_inputs.len(),
        )?;
        let pr_expected = if prediction_resistance {
            CALLS_PER_CASE
        } else {
            0
        };
        check_count("EntropyInputPR", pr_expected, self.entropy_pr.len())?;
        let reseed = match (self.entropy_reseed, self.additional_reseed) {
            (Some(entropy_input), Some(additional_input)) => Some(ReseedInput {
                entropy_input,
                additional_input,
            }),
            (None, None) => None,
            _ => return Err(err(line, ParseErrorKind::PartialReseed)),
        };
        Ok(CavpCase {
            count: self.count,
            entropy_input: need(self.entropy_input, "EntropyInput")?,
            nonce: need(self.nonce, "Nonce")?,
            personalization: need(self.personalization, "PersonalizationString")?,
            reseed,
            additional_inputs: self.additional_inputs,
            entropy_pr: self.entropy_pr,
            returned_bits: need(self.returned_bits, "ReturnedBits")?,
            extra: self.extra,
        })
    }
}

enum Current {
    Nothing,
    Headers(PendingGroup),
    Cases(CavpGroup, Option<CaseBuilder>),
}

fn close(current: Current, groups: &mut Vec<CavpGroup>) -> Result<(), CavpError> {
    match current {
        Current::Nothing => {}
        Current::Headers(pending) => groups.push(pending.finish()?),
        Current::Cases(mut group, case) => {
            if let Some(case) = case {
                group.cases.push(case.finish(group.prediction_resistance)?);
            }
            groups.push(group);
        }
    }
    Ok(())
}

fn split_assignment(s: &str) -> Option<(&str, &str)> {
    let (k, v) = s.split_once('=')?;
    let k = k.trim();
    (!k.is_empty()).then_some((k, v.trim()))
}

/// Parses a CAVP response file.
pub fn parse(text: &str) -> Result<CavpFile, CavpError> {
    let mut file = CavpFile::default();
    let mut current = Current::Nothing;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if matches!(current, Current::Nothing) && file.groups.is_empty() {
                file.comments.push(comment.trim_start().to_string());
            }
            continue;
        }

        if let Some(inner) = line.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| err(line_no, ParseErrorKind::Malformed(line.to_string())))?;
            let header = match split_assignment(inner) {
                Some((key, value)) => Header::Param {
                    key: key.to_string(),
                    value: value.to_string(),
                },
                None => Header::Tag(inner.trim().to_string()),
            };
            current = match current {
                Current::Headers(mut pending) if !pending.starts_new_group(&header) => {
                    pending.headers.push(header);
                    Current::Headers(pending)
                }
                other => {
                    close(other, &mut file.groups)?;
                    Current::Headers(PendingGroup {
                        line: line_no,
                        headers: vec![header],
                    })
                }
            };
            continue;
        }

        let (key, value) = split_assignment(line)
            .ok_or_else(|| err(line_no, ParseErrorKind::Malformed(line.to_string())))?;

        if key == "COUNT" {
            let found: u32 = value
                .parse()
                .map_err(|_| err(line_no, ParseErrorKind::Malformed(line.to_string())))?;
            let (mut group, open) = match current {
                Current::Headers(pending) => (pending.finish()?, None),
                Current::Cases(group, open) => (group, open),
                Current::Nothing => {
                    return Err(err(line_no, ParseErrorKind::MissingHeader("mechanism tag")));
                }
            };
            if let Some(open) = open {
                group.cases.push(open.finish(group.prediction_resistance)?);
            }
            if group.cases.iter().any(|c| c.count == found) {
                return Err(err(line_no, ParseErrorKind::DuplicateCount(found)));
            }
            let expected = group.cases.len() as u32;
            if found != expected {
                return Err(err(
                    line_no,
                    ParseErrorKind::CountOutOfOrder { expected, found },
                ));
            }
            let builder = CaseBuilder {
                line: line_no,
                count: found,
                ..CaseBuilder::default()
            };
            current = Current::Cases(group, Some(builder));
            continue;
        }

        match &mut current {
            Current::Cases(group, Some(case)) => {
                let octets = from_hex(value).map_err(|e| err(line_no, e.into()))?;
                case.field(line_no, key, octets, &group.lens)?;
            }
            _ => {
                return Err(err(
                    line_no,
                    ParseErrorKind::FieldOutsideCase(key.to_string()),
                ))
            }
        }
    }
    close(current, &mut file.groups)?;
    Ok(file)
}

/// Renders a file in canonical CAVP layout. Field values and header order
/// are preserved; whitespace and field order within a case are normalized.
pub fn serialize(file: &CavpFile) -> String {
    let mut out = String::new();
    for c in &file.comments {
        let _ = writeln!(out, "# {c}");
    }
    if !file.comments.is_empty() {
        out.push('\n');
    }
    for group in &file.groups {
        for h in &group.headers {
            let _ = match h {
                Header::Tag(t) => writeln!(out, "[{t}]"),
                Header::Param { key, value } => writeln!(out, "[{key} = {value}]"),
            };
        }
        out.push('\n');
        for case in &group.cases {
            write_case(&mut out, case);
            out.push('\n');
        }
    }
    out
}

fn write_case(out: &mut String, case: &CavpCase) {
    let _ = writeln!(out, "COUNT = {}", case.count);
    let mut field = |key: &str, value: &[u8]| {
        let _ = writeln!(out, "{key} = {}", to_hex(value));
    };
    field("EntropyInput", &case.entropy_input);
    field("Nonce", &case.nonce);
    field("PersonalizationString", &case.personalization);
    if let Some(r) = &case.reseed {
        field("EntropyInputReseed", &r.entropy_input);
        field("AdditionalInputReseed", &r.additional_input);
    }
    for (j, add) in case.additional_inputs.iter().enumerate() {
        field("AdditionalInput", add);
        if let Some(pr) = case.entropy_pr.get(j) {
            field("EntropyInputPR", pr);
        }
    }
    for pr in case.entropy_pr.iter().skip(case.additional_inputs.len()) {
        field("EntropyInputPR", pr);
    }
    field("ReturnedBits", &case.returned_bits);
    for (k, v) in &case.extra {
        field(k, v);
    }
}
