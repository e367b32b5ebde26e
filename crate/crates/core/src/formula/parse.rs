use super::transform::STAR_SUFFIX;
use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("empty formula")]
    Empty,
    #[error("unknown token `{token}` at position {pos}")]
    UnknownToken { pos: usize, token: String },
    #[error("unexpected `{token}` at position {pos}, expected {expected}")]
    Unexpected { pos: usize, token: String, expected: &'static str },
    #[error("unexpected end of input, expected {expected}")]
    UnexpectedEnd { expected: &'static str },
    #[error("variable `{name}` at position {pos} uses the reserved suffix `{STAR_SUFFIX}`")]
    ReservedName { pos: usize, name: String },
}

impl ParseError {
    /// Byte offset of the offending token, if there is one.
    pub fn position(&self) -> Option<usize> {
        match self {
            ParseError::UnknownToken { pos, .. }
            | ParseError::Unexpected { pos, .. }
            | ParseError::ReservedName { pos, .. } => Some(*pos),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    Tilde,
    Bang,
    Hash,
    BoxOp,
    DiaOp,
    And,
    Or,
    Arrow,
    Coimpl,
    Iff,
    LParen,
    RParen,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Ident(s) => s.clone(),
            Tok::Zero => "0".into(),
            Tok::One => "1".into(),
            Tok::Tilde => "~".into(),
            Tok::Bang => "!".into(),
            Tok::Hash => "#".into(),
            Tok::BoxOp => "[]".into(),
            Tok::DiaOp => "<>".into(),
            Tok::And => "&".into(),
            Tok::Or => "|".into(),
            Tok::Arrow => "->".into(),
            Tok::Coimpl => "-<".into(),
            Tok::Iff => "<->".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let rest = &text[i..];
        let fixed: &[(&str, Tok)] = &[
            ("<->", Tok::Iff),
            ("->", Tok::Arrow),
            ("-<", Tok::Coimpl),
            ("[]", Tok::BoxOp),
            ("<>", Tok::DiaOp),
            ("~", Tok::Tilde),
            ("!", Tok::Bang),
            ("#", Tok::Hash),
            ("&", Tok::And),
            ("|", Tok::Or),
            ("(", Tok::LParen),
            (")", Tok::RParen),
        ];
        if let Some((s, t)) = fixed.iter().find(|(s, _)| rest.starts_with(s)) {
            out.push((i, t.clone()));
            i += s.len();
            continue;
        }
        if c.is_ascii_lowercase() {
            let end = rest
                .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                .unwrap_or(rest.len());
            let name = &rest[..end];
            if name.contains(STAR_SUFFIX) {
                return Err(ParseError::ReservedName { pos: i, name: name.to_string() });
            }
            out.push((i, Tok::Ident(name.to_string())));
            i += end;
            continue;
        }
        if c.is_ascii_alphanumeric() || c == b'_' {
            let end = rest
                .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                .unwrap_or(rest.len());
            let word = &rest[..end];
            match word {
                "0" => out.push((i, Tok::Zero)),
                "1" => out.push((i, Tok::One)),
                _ => return Err(ParseError::UnknownToken { pos: i, token: word.to_string() }),
            }
            i += end;
            continue;
        }
        let ch = rest.chars().next().unwrap_or('?');
        return Err(ParseError::UnknownToken { pos: i, token: ch.to_string() });
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn bump(&mut self) {
        self.at += 1;
    }

    fn fail(&self, expected: &'static str) -> ParseError {
        match self.toks.get(self.at) {
            Some((pos, t)) => ParseError::Unexpected { pos: *pos, token: t.text(), expected },
            None => ParseError::UnexpectedEnd { expected },
        }
    }

    // implication level: `->` and `<->`, right-associative
    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.coimplication()?;
        match self.peek() {
            Some(Tok::Arrow) => {
                self.bump();
                Ok(Formula::implies(lhs, self.implication()?))
            }
            Some(Tok::Iff) => {
                self.bump();
                Ok(Formula::iff(lhs, self.implication()?))
            }
            _ => Ok(lhs),
        }
    }

    fn coimplication(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.disjunction()?;
        while self.peek() == Some(&Tok::Coimpl) {
            self.bump();
            lhs = Formula::coimpl(lhs, self.disjunction()?);
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.peek() == Some(&Tok::Or) {
            self.bump();
            lhs = Formula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let wrap: fn(Formula) -> Formula = match self.peek() {
            Some(Tok::Tilde) => Formula::gneg,
            Some(Tok::Bang) => Formula::dmneg,
            Some(Tok::Hash) => Formula::delta,
            Some(Tok::BoxOp) => Formula::boxed,
            Some(Tok::DiaOp) => Formula::dia,
            _ => return self.atom(),
        };
        self.bump();
        Ok(wrap(self.unary()?))
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let f = match self.peek() {
            Some(Tok::Ident(name)) => Formula::Var(name.clone()),
            Some(Tok::Zero) => Formula::Zero,
            Some(Tok::One) => Formula::One,
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.implication()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.fail("`)`"));
                }
                self.bump();
                return Ok(inner);
            }
            _ => return Err(self.fail("a formula")),
        };
        self.bump();
        Ok(f)
    }
}

/// Parses the ASCII concrete syntax. Whitespace is insignificant.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut p = Parser { toks, at: 0 };
    let f = p.implication()?;
    if p.at < p.toks.len() {
        return Err(p.fail("an operator or end of input"));
    }
    Ok(f)
}
