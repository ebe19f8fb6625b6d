//! The `.had` definition-file format: a line-oriented, brace-delimited
//! grammar for algebras, modules, algebroids, comodules, descent data,
//! group actions and equivariant modules.
//!
//! Entities are `kind name { key = value ... }`; values are integers,
//! quoted strings, bare identifiers (cross-references by name) or
//! bracketed lists, nested for matrices. `#` starts a comment. The
//! serializer emits a canonical form (fixed field order, canonical
//! integer representatives, single spaces) and `parse ∘ serialize` is the
//! identity on documents.

use std::fmt::Write as _;

/// A parse error with position information.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error at {}:{}: expected {}", self.line, self.column, self.expected)
    }
}

impl std::error::Error for ParseError {}

/// One parsed record. Matrix entries are kept as raw signed integers;
/// they are reduced mod p when the document is resolved against its
/// algebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Record {
    Algebra {
        p: u64,
        dim: usize,
        unit: Vec<i64>,
        mul: Vec<Vec<Vec<i64>>>,
        labels: Option<Vec<String>>,
    },
    Group {
        table: Vec<Vec<i64>>,
    },
    Hom {
        src: String,
        dst: String,
        matrix: Vec<Vec<i64>>,
    },
    Module {
        algebra: String,
        dim: usize,
        action: Vec<Vec<Vec<i64>>>,
    },
    GroupAction {
        group: String,
        algebra: String,
        rho: Vec<Vec<Vec<i64>>>,
    },
    /// Either derived from a group action or given by explicit components.
    Algebroid(AlgebroidRecord),
    AlgebroidHom {
        src: String,
        dst: String,
        phi0: String,
        phi1: String,
    },
    Comodule {
        algebroid: String,
        module: String,
        /// ψ on pure-tensor coordinates: an (n1 * m) x m matrix.
        psi: Vec<Vec<i64>>,
    },
    Descent {
        algebroid: String,
        module: String,
        /// τ on pure-tensor coordinates: an (n1 * m) x (n1 * m) matrix.
        tau: Vec<Vec<i64>>,
    },
    Equivariant {
        action: String,
        module: String,
        pi: Vec<Vec<Vec<i64>>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebroidRecord {
    FromAction {
        action: String,
    },
    Explicit {
        a0: String,
        a1: String,
        eta_l: String,
        eta_r: String,
        eps: String,
        kappa: String,
        /// ∇ on pure-tensor coordinates: an (n1^2) x n1 matrix.
        nabla: Vec<Vec<i64>>,
    },
}

impl Record {
    pub fn kind(&self) -> &'static str {
        match self {
            Record::Algebra { .. } => "algebra",
            Record::Group { .. } => "group",
            Record::Hom { .. } => "hom",
            Record::Module { .. } => "module",
            Record::GroupAction { .. } => "group_action",
            Record::Algebroid(_) => "algebroid",
            Record::AlgebroidHom { .. } => "algebroid_hom",
            Record::Comodule { .. } => "comodule",
            Record::Descent { .. } => "descent",
            Record::Equivariant { .. } => "equivariant",
        }
    }
}

/// A parsed document: named entities in file order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    pub entities: Vec<(String, Record)>,
}

impl Document {
    pub fn get(&self, name: &str) -> Option<&Record> {
        self.entities.iter().find(|(n, _)| n == name).map(|(_, r)| r)
    }

    pub fn push(&mut self, name: String, record: Record) -> Result<(), String> {
        if self.get(&name).is_some() {
            return Err(format!("duplicate entity name `{name}`"));
        }
        self.entities.push((name, record));
        Ok(())
    }
}

// ---------------------------------------------------------------------
// tokenizer
// ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Int(i64),
    Str(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Equals,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer { chars: text.chars().peekable(), line: 1, column: 1 }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError { line: self.line, column: self.column, expected: expected.to_string() }
    }

    /// Next token with its starting position.
    fn next_token(&mut self) -> Result<Option<(Token, usize, usize)>, ParseError> {
        loop {
            match self.chars.peek() {
                None => return Ok(None),
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while let Some(&c) = self.chars.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
        let (line, column) = (self.line, self.column);
        let c = *self.chars.peek().unwrap();
        let token = match c {
            '{' => {
                self.bump();
                Token::LBrace
            }
            '}' => {
                self.bump();
                Token::RBrace
            }
            '[' => {
                self.bump();
                Token::LBracket
            }
            ']' => {
                self.bump();
                Token::RBracket
            }
            '=' => {
                self.bump();
                Token::Equals
            }
            '"' => {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        Some('"') => break,
                        Some(c) => s.push(c),
                        None => return Err(self.error("closing '\"'")),
                    }
                }
                Token::Str(s)
            }
            c if c == '-' || c.is_ascii_digit() => {
                let mut s = String::new();
                s.push(self.bump().unwrap());
                while let Some(&c) = self.chars.peek() {
                    if c.is_ascii_digit() {
                        s.push(self.bump().unwrap());
                    } else {
                        break;
                    }
                }
                let v = s.parse::<i64>().map_err(|_| self.error("an integer"))?;
                Token::Int(v)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                s.push(self.bump().unwrap());
                while let Some(&c) = self.chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(self.bump().unwrap());
                    } else {
                        break;
                    }
                }
                Token::Ident(s)
            }
            _ => return Err(self.error("an identifier, number, string, or bracket")),
        };
        Ok(Some((token, line, column)))
    }
}

// ---------------------------------------------------------------------
// parser
// ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Value {
    Int(i64),
    Str(String),
    Name(String),
    List(Vec<Value>),
}

struct Parser {
    tokens: Vec<(Token, usize, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(Token, usize, usize)> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<(Token, usize, usize)> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn error_at(&self, expected: &str) -> ParseError {
        match self.tokens.get(self.pos) {
            Some((_, l, c)) => {
                ParseError { line: *l, column: *c, expected: expected.to_string() }
            }
            None => ParseError { line: 0, column: 0, expected: format!("{expected} (at end of input)") },
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.bump() {
            Some((Token::Ident(s), _, _)) => Ok(s),
            _ => {
                self.pos -= 1;
                Err(self.error_at(what))
            }
        }
    }

    fn expect(&mut self, t: Token, what: &str) -> Result<(), ParseError> {
        match self.bump() {
            Some((tok, _, _)) if tok == t => Ok(()),
            _ => {
                self.pos -= 1;
                Err(self.error_at(what))
            }
        }
    }

    fn value(&mut self) -> Result<Value, ParseError> {
        match self.bump() {
            Some((Token::Int(v), _, _)) => Ok(Value::Int(v)),
            Some((Token::Str(s), _, _)) => Ok(Value::Str(s)),
            Some((Token::Ident(s), _, _)) => Ok(Value::Name(s)),
            Some((Token::LBracket, _, _)) => {
                let mut items = Vec::new();
                loop {
                    match self.peek() {
                        Some((Token::RBracket, _, _)) => {
                            self.bump();
                            return Ok(Value::List(items));
                        }
                        Some(_) => items.push(self.value()?),
                        None => return Err(self.error_at("']'")),
                    }
                }
            }
            _ => {
                self.pos -= 1;
                Err(self.error_at("a value"))
            }
        }
    }
}

/// Parses a document. Duplicate names and malformed records are errors.
pub fn parse(text: &str) -> Result<Document, ParseError> {
    let mut lexer = Lexer::new(text);
    let mut tokens = Vec::new();
    while let Some(t) = lexer.next_token()? {
        tokens.push(t);
    }
    let mut parser = Parser { tokens, pos: 0 };
    let mut doc = Document::default();
    while parser.peek().is_some() {
        let kind = parser.expect_ident("an entity kind")?;
        let name = parser.expect_ident("an entity name")?;
        let header_pos = parser.pos;
        parser.expect(Token::LBrace, "'{'")?;
        let mut fields: Vec<(String, Value)> = Vec::new();
        loop {
            match parser.peek() {
                Some((Token::RBrace, _, _)) => {
                    parser.bump();
                    break;
                }
                Some((Token::Ident(_), _, _)) => {
                    let key = parser.expect_ident("a field key")?;
                    parser.expect(Token::Equals, "'='")?;
                    let v = parser.value()?;
                    fields.push((key, v));
                }
                _ => return Err(parser.error_at("a field or '}'")),
            }
        }
        let record = build_record(&kind, &fields).map_err(|expected| {
            let (_, l, c) = parser.tokens[header_pos - 1];
            ParseError { line: l, column: c, expected }
        })?;
        doc.push(name, record).map_err(|e| {
            let (_, l, c) = parser.tokens[header_pos - 1];
            ParseError { line: l, column: c, expected: e }
        })?;
    }
    Ok(doc)
}

fn build_record(kind: &str, fields: &[(String, Value)]) -> Result<Record, String> {
    let get = |key: &str| -> Result<&Value, String> {
        fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v)
            .ok_or_else(|| format!("field `{key}` in `{kind}`"))
    };
    let as_int = |v: &Value| -> Result<i64, String> {
        match v {
            Value::Int(i) => Ok(*i),
            _ => Err("an integer".into()),
        }
    };
    let as_name = |v: &Value| -> Result<String, String> {
        match v {
            Value::Name(s) => Ok(s.clone()),
            _ => Err("a reference by name".into()),
        }
    };
    let as_vec = |v: &Value| -> Result<Vec<i64>, String> {
        match v {
            Value::List(items) => items.iter().map(as_int).collect(),
            _ => Err("a vector [a b c]".into()),
        }
    };
    let as_matrix = |v: &Value| -> Result<Vec<Vec<i64>>, String> {
        match v {
            Value::List(items) => items
                .iter()
                .map(|r| as_vec(r).map_err(|_| "a matrix of integer rows".to_string()))
                .collect(),
            _ => Err("a matrix [[..] [..]]".into()),
        }
    };
    let as_tensor = |v: &Value| -> Result<Vec<Vec<Vec<i64>>>, String> {
        match v {
            Value::List(items) => items
                .iter()
                .map(|m| as_matrix(m).map_err(|_| "a list of matrices".to_string()))
                .collect(),
            _ => Err("a list of matrices".into()),
        }
    };
    let as_strings = |v: &Value| -> Result<Vec<String>, String> {
        match v {
            Value::List(items) => items
                .iter()
                .map(|s| match s {
                    Value::Str(x) => Ok(x.clone()),
                    _ => Err("a quoted string".to_string()),
                })
                .collect(),
            _ => Err("a list of strings".into()),
        }
    };

    match kind {
        "algebra" => Ok(Record::Algebra {
            p: as_int(get("p")?)? as u64,
            dim: as_int(get("dim")?)? as usize,
            unit: as_vec(get("unit")?)?,
            mul: as_tensor(get("mul")?)?,
            labels: match fields.iter().find(|(k, _)| k == "labels") {
                Some((_, v)) => Some(as_strings(v)?),
                None => None,
            },
        }),
        "group" => Ok(Record::Group { table: as_matrix(get("table")?)? }),
        "hom" => Ok(Record::Hom {
            src: as_name(get("src")?)?,
            dst: as_name(get("dst")?)?,
            matrix: as_matrix(get("matrix")?)?,
        }),
        "module" => Ok(Record::Module {
            algebra: as_name(get("algebra")?)?,
            dim: as_int(get("dim")?)? as usize,
            action: as_tensor(get("action")?)?,
        }),
        "group_action" => Ok(Record::GroupAction {
            group: as_name(get("group")?)?,
            algebra: as_name(get("algebra")?)?,
            rho: as_tensor(get("rho")?)?,
        }),
        "algebroid" => {
            if let Ok(action) = get("action") {
                Ok(Record::Algebroid(AlgebroidRecord::FromAction { action: as_name(action)? }))
            } else {
                Ok(Record::Algebroid(AlgebroidRecord::Explicit {
                    a0: as_name(get("a0")?)?,
                    a1: as_name(get("a1")?)?,
                    eta_l: as_name(get("eta_l")?)?,
                    eta_r: as_name(get("eta_r")?)?,
                    eps: as_name(get("eps")?)?,
                    kappa: as_name(get("kappa")?)?,
                    nabla: as_matrix(get("nabla")?)?,
                }))
            }
        }
        "algebroid_hom" => Ok(Record::AlgebroidHom {
            src: as_name(get("src")?)?,
            dst: as_name(get("dst")?)?,
            phi0: as_name(get("phi0")?)?,
            phi1: as_name(get("phi1")?)?,
        }),
        "comodule" => Ok(Record::Comodule {
            algebroid: as_name(get("algebroid")?)?,
            module: as_name(get("module")?)?,
            psi: as_matrix(get("psi")?)?,
        }),
        "descent" => Ok(Record::Descent {
            algebroid: as_name(get("algebroid")?)?,
            module: as_name(get("module")?)?,
            tau: as_matrix(get("tau")?)?,
        }),
        "equivariant" => Ok(Record::Equivariant {
            action: as_name(get("action")?)?,
            module: as_name(get("module")?)?,
            pi: as_tensor(get("pi")?)?,
        }),
        _ => Err(format!("a known entity kind, got `{kind}`")),
    }
}

// ---------------------------------------------------------------------
// serializer
// ---------------------------------------------------------------------

fn fmt_vec(v: &[i64]) -> String {
    let inner: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", inner.join(" "))
}

fn fmt_matrix(m: &[Vec<i64>]) -> String {
    let rows: Vec<String> = m.iter().map(|r| fmt_vec(r)).collect();
    format!("[{}]", rows.join(" "))
}

fn fmt_tensor(t: &[Vec<Vec<i64>>]) -> String {
    let mats: Vec<String> = t.iter().map(|m| fmt_matrix(m)).collect();
    format!("[{}]", mats.join(" "))
}

/// Canonical serialization: fixed field order, one field per line,
/// entities separated by blank lines.
pub fn serialize(doc: &Document) -> String {
    let mut out = String::new();
    for (i, (name, record)) in doc.entities.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "{} {} {{", record.kind(), name);
        match record {
            Record::Algebra { p, dim, unit, mul, labels } => {
                let _ = writeln!(out, "  p = {p}");
                let _ = writeln!(out, "  dim = {dim}");
                let _ = writeln!(out, "  unit = {}", fmt_vec(unit));
                if let Some(l) = labels {
                    let quoted: Vec<String> = l.iter().map(|s| format!("\"{s}\"")).collect();
                    let _ = writeln!(out, "  labels = [{}]", quoted.join(" "));
                }
                let _ = writeln!(out, "  mul = {}", fmt_tensor(mul));
            }
            Record::Group { table } => {
                let _ = writeln!(out, "  table = {}", fmt_matrix(table));
            }
            Record::Hom { src, dst, matrix } => {
                let _ = writeln!(out, "  src = {src}");
                let _ = writeln!(out, "  dst = {dst}");
                let _ = writeln!(out, "  matrix = {}", fmt_matrix(matrix));
            }
            Record::Module { algebra, dim, action } => {
                let _ = writeln!(out, "  algebra = {algebra}");
                let _ = writeln!(out, "  dim = {dim}");
                let _ = writeln!(out, "  action = {}", fmt_tensor(action));
            }
            Record::GroupAction { group, algebra, rho } => {
                let _ = writeln!(out, "  group = {group}");
                let _ = writeln!(out, "  algebra = {algebra}");
                let _ = writeln!(out, "  rho = {}", fmt_tensor(rho));
            }
            Record::Algebroid(AlgebroidRecord::FromAction { action }) => {
                let _ = writeln!(out, "  action = {action}");
            }
            Record::Algebroid(AlgebroidRecord::Explicit {
                a0,
                a1,
                eta_l,
                eta_r,
                eps,
                kappa,
                nabla,
            }) => {
                let _ = writeln!(out, "  a0 = {a0}");
                let _ = writeln!(out, "  a1 = {a1}");
                let _ = writeln!(out, "  eta_l = {eta_l}");
                let _ = writeln!(out, "  eta_r = {eta_r}");
                let _ = writeln!(out, "  eps = {eps}");
                let _ = writeln!(out, "  kappa = {kappa}");
                let _ = writeln!(out, "  nabla = {}", fmt_matrix(nabla));
            }
            Record::AlgebroidHom { src, dst, phi0, phi1 } => {
                let _ = writeln!(out, "  src = {src}");
                let _ = writeln!(out, "  dst = {dst}");
                let _ = writeln!(out, "  phi0 = {phi0}");
                let _ = writeln!(out, "  phi1 = {phi1}");
            }
            Record::Comodule { algebroid, module, psi } => {
                let _ = writeln!(out, "  algebroid = {algebroid}");
                let _ = writeln!(out, "  module = {module}");
                let _ = writeln!(out, "  psi = {}", fmt_matrix(psi));
            }
            Record::Descent { algebroid, module, tau } => {
                let _ = writeln!(out, "  algebroid = {algebroid}");
                let _ = writeln!(out, "  module = {module}");
                let _ = writeln!(out, "  tau = {}", fmt_matrix(tau));
            }
            Record::Equivariant { action, module, pi } => {
                let _ = writeln!(out, "  action = {action}");
                let _ = writeln!(out, "  module = {module}");
                let _ = writeln!(out, "  pi = {}", fmt_tensor(pi));
            }
        }
        out.push_str("}\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
# a comment
algebra A {
  p = 3
  dim = 2
  unit = [1 1]
  mul = [[[1 0] [0 0]] [[0 0] [0 1]]]
}

group Z2 {
  table = [[0 1] [1 0]]
}
"#;

    #[test]
    fn parse_then_serialize_round_trips() {
        let doc = parse(SAMPLE).unwrap();
        assert_eq!(doc.entities.len(), 2);
        let text = serialize(&doc);
        let doc2 = parse(&text).unwrap();
        assert_eq!(doc, doc2);
        // canonical text is a fixed point
        assert_eq!(serialize(&doc2), text);
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let text = "group A { table = [[0]] }\ngroup A { table = [[0]] }";
        let err = parse(text).unwrap_err();
        assert!(err.expected.contains("duplicate"));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse("algebra A {\n  p = ]\n}").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.column > 0);
    }

    #[test]
    fn missing_fields_are_reported() {
        let err = parse("algebra A {\n  p = 2\n}").unwrap_err();
        assert!(err.expected.contains("dim"));
    }
}
