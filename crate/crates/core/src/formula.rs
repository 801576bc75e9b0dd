//! Acceptance-condition formulas, ADF instances, and the two text formats they are read from:
//! the `s(..)`/`ac(..)` ADF instance format and the `targets, factors` Boolean-network format.

use std::collections::HashMap;
use std::fmt;

/// Default budget (in AST nodes) for the connective elimination performed by [`write_bnet`].
pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("argument `{name}` is declared more than once")]
    DuplicateArgument { name: String },
    #[error("acceptance condition of `{name}` (line {line}) mentions undeclared argument `{undeclared}`")]
    UndeclaredArgument {
        name: String,
        undeclared: String,
        line: usize,
    },
    #[error("argument `{name}` has more than one acceptance condition (line {line})")]
    DuplicateCondition { name: String, line: usize },
    #[error("argument `{name}` has no acceptance condition")]
    MissingCondition { name: String },
    #[error("target `{name}` is defined more than once (line {line})")]
    DuplicateTarget { name: String, line: usize },
    #[error("invalid argument name `{name}`")]
    InvalidName { name: String },
    #[error("{arguments} arguments but {conditions} conditions")]
    ConditionCount { arguments: usize, conditions: usize },
    #[error("rewriting the condition of `{name}` needs {size} AST nodes, above the budget of {budget}")]
    SizeLimit {
        name: String,
        size: usize,
        budget: usize,
    },
}

/// Propositional acceptance condition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Var(String),
    Const(bool),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Xor(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Formula {
        Formula::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Formula {
        Formula::Imp(Box::new(l), Box::new(r))
    }

    pub fn iff(l: Formula, r: Formula) -> Formula {
        Formula::Iff(Box::new(l), Box::new(r))
    }

    pub fn xor(l: Formula, r: Formula) -> Formula {
        Formula::Xor(Box::new(l), Box::new(r))
    }

    /// Evaluates the formula; `value` supplies the truth value of every variable.
    pub fn eval(&self, value: &impl Fn(&str) -> bool) -> bool {
        match self {
            Formula::Var(name) => value(name),
            Formula::Const(c) => *c,
            Formula::Not(f) => !f.eval(value),
            Formula::And(l, r) => l.eval(value) && r.eval(value),
            Formula::Or(l, r) => l.eval(value) || r.eval(value),
            Formula::Imp(l, r) => !l.eval(value) || r.eval(value),
            Formula::Iff(l, r) => l.eval(value) == r.eval(value),
            Formula::Xor(l, r) => l.eval(value) != r.eval(value),
        }
    }

    /// Variable names in order of first occurrence.
    pub fn variables(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        self.visit_vars(&mut |name| {
            if !out.contains(&name) {
                out.push(name);
            }
        });
        out
    }

    fn visit_vars<'a>(&'a self, visit: &mut impl FnMut(&'a str)) {
        match self {
            Formula::Var(name) => visit(name),
            Formula::Const(_) => {}
            Formula::Not(f) => f.visit_vars(visit),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Imp(l, r)
            | Formula::Iff(l, r)
            | Formula::Xor(l, r) => {
                l.visit_vars(visit);
                r.visit_vars(visit);
            }
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Const(_) => 1,
            Formula::Not(f) => 1 + f.size(),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Imp(l, r)
            | Formula::Iff(l, r)
            | Formula::Xor(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Replaces variables for which `value` returns a constant, then folds constants.
    pub fn substitute(&self, value: &impl Fn(&str) -> Option<bool>) -> Formula {
        match self {
            Formula::Var(name) => match value(name) {
                Some(c) => Formula::Const(c),
                None => self.clone(),
            },
            Formula::Const(_) => self.clone(),
            Formula::Not(f) => match f.substitute(value) {
                Formula::Const(c) => Formula::Const(!c),
                g => Formula::not(g),
            },
            Formula::And(l, r) => match (l.substitute(value), r.substitute(value)) {
                (Formula::Const(false), _) | (_, Formula::Const(false)) => Formula::Const(false),
                (Formula::Const(true), g) | (g, Formula::Const(true)) => g,
                (a, b) => Formula::and(a, b),
            },
            Formula::Or(l, r) => match (l.substitute(value), r.substitute(value)) {
                (Formula::Const(true), _) | (_, Formula::Const(true)) => Formula::Const(true),
                (Formula::Const(false), g) | (g, Formula::Const(false)) => g,
                (a, b) => Formula::or(a, b),
            },
            Formula::Imp(l, r) => match (l.substitute(value), r.substitute(value)) {
                (Formula::Const(false), _) | (_, Formula::Const(true)) => Formula::Const(true),
                (Formula::Const(true), g) => g,
                (g, Formula::Const(false)) => Formula::not(g),
                (a, b) => Formula::imp(a, b),
            },
            Formula::Iff(l, r) => match (l.substitute(value), r.substitute(value)) {
                (Formula::Const(true), g) | (g, Formula::Const(true)) => g,
                (Formula::Const(false), g) | (g, Formula::Const(false)) => Formula::not(g),
                (a, b) => Formula::iff(a, b),
            },
            Formula::Xor(l, r) => match (l.substitute(value), r.substitute(value)) {
                (Formula::Const(false), g) | (g, Formula::Const(false)) => g,
                (Formula::Const(true), g) | (g, Formula::Const(true)) => Formula::not(g),
                (a, b) => Formula::xor(a, b),
            },
        }
    }

    /// Size of [`Formula::to_basic`] without building it (saturating).
    fn basic_size(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Const(_) => 1,
            Formula::Not(f) => 1 + f.basic_size(),
            Formula::And(l, r) | Formula::Or(l, r) => {
                1usize.saturating_add(l.basic_size()).saturating_add(r.basic_size())
            }
            // !l | r
            Formula::Imp(l, r) => 2usize.saturating_add(l.basic_size()).saturating_add(r.basic_size()),
            // (l & !r) | (!l & r)  and  (l & r) | (!l & !r)
            Formula::Iff(l, r) | Formula::Xor(l, r) => l
                .basic_size()
                .saturating_add(r.basic_size())
                .saturating_mul(2)
                .saturating_add(5),
        }
    }

    /// Equivalent formula using only `Not`, `And`, `Or`, variables and constants.
    pub fn to_basic(&self) -> Formula {
        match self {
            Formula::Var(_) | Formula::Const(_) => self.clone(),
            Formula::Not(f) => Formula::not(f.to_basic()),
            Formula::And(l, r) => Formula::and(l.to_basic(), r.to_basic()),
            Formula::Or(l, r) => Formula::or(l.to_basic(), r.to_basic()),
            Formula::Imp(l, r) => Formula::or(Formula::not(l.to_basic()), r.to_basic()),
            Formula::Xor(l, r) => {
                let (l, r) = (l.to_basic(), r.to_basic());
                Formula::or(
                    Formula::and(l.clone(), Formula::not(r.clone())),
                    Formula::and(Formula::not(l), r),
                )
            }
            Formula::Iff(l, r) => {
                let (l, r) = (l.to_basic(), r.to_basic());
                Formula::or(
                    Formula::and(l.clone(), r.clone()),
                    Formula::and(Formula::not(l), Formula::not(r)),
                )
            }
        }
    }
}

/// Writes the formula in the ADF instance syntax (`and(a,neg(b))`, `c(v)`, ...).
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let binary = |f: &mut fmt::Formatter<'_>, op: &str, l: &Formula, r: &Formula| {
            write!(f, "{op}({l},{r})")
        };
        match self {
            Formula::Var(name) => write!(f, "{name}"),
            Formula::Const(true) => write!(f, "c(v)"),
            Formula::Const(false) => write!(f, "c(f)"),
            Formula::Not(g) => write!(f, "neg({g})"),
            Formula::And(l, r) => binary(f, "and", l, r),
            Formula::Or(l, r) => binary(f, "or", l, r),
            Formula::Imp(l, r) => binary(f, "imp", l, r),
            Formula::Iff(l, r) => binary(f, "iff", l, r),
            Formula::Xor(l, r) => binary(f, "xor", l, r),
        }
    }
}

pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// An abstract dialectical framework: ordered arguments, one acceptance condition each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adf {
    arguments: Vec<String>,
    conditions: Vec<Formula>,
    index: HashMap<String, usize>,
}

impl Adf {
    pub fn new(arguments: Vec<String>, conditions: Vec<Formula>) -> Result<Adf, FormulaError> {
        if arguments.len() != conditions.len() {
            return Err(FormulaError::ConditionCount {
                arguments: arguments.len(),
                conditions: conditions.len(),
            });
        }
        let mut index = HashMap::with_capacity(arguments.len());
        for (i, name) in arguments.iter().enumerate() {
            if !is_valid_name(name) {
                return Err(FormulaError::InvalidName { name: name.clone() });
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(FormulaError::DuplicateArgument { name: name.clone() });
            }
        }
        for (name, condition) in arguments.iter().zip(&conditions) {
            if let Some(undeclared) = condition.variables().into_iter().find(|v| !index.contains_key(*v)) {
                return Err(FormulaError::UndeclaredArgument {
                    name: name.clone(),
                    undeclared: undeclared.to_string(),
                    line: 0,
                });
            }
        }
        Ok(Adf {
            arguments,
            conditions,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.arguments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arguments.is_empty()
    }

    pub fn arguments(&self) -> &[String] {
        &self.arguments
    }

    pub fn conditions(&self) -> &[Formula] {
        &self.conditions
    }

    pub fn condition(&self, argument: usize) -> &Formula {
        &self.conditions[argument]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Whether the argument's condition is syntactically just the argument itself.
    pub fn is_free_input(&self, argument: usize) -> bool {
        matches!(&self.conditions[argument], Formula::Var(name) if *name == self.arguments[argument])
    }

    pub fn free_inputs(&self) -> Vec<usize> {
        (0..self.len()).filter(|i| self.is_free_input(*i)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Bang,
    Amp,
    Pipe,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Ident(name) => write!(f, "`{name}`"),
            Token::LParen => write!(f, "`(`"),
            Token::RParen => write!(f, "`)`"),
            Token::Comma => write!(f, "`,`"),
            Token::Dot => write!(f, "`.`"),
            Token::Bang => write!(f, "`!`"),
            Token::Amp => write!(f, "`&`"),
            Token::Pipe => write!(f, "`|`"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    token: Token,
    line: usize,
    column: usize,
}

/// Splits `text` into tokens; `bnet` enables the `!`, `&`, `|` operators. Identifiers are
/// runs of alphanumerics and underscores (name validity is checked by the parsers).
fn tokenize(text: &str, bnet: bool, first_line: usize) -> Result<Vec<Spanned>, FormulaError> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (first_line, 1);
    while let Some(&c) = chars.peek() {
        let (start_line, start_column) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if !bnet && c == '%' {
            // Line comment.
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                column += 1;
            }
            continue;
        }
        if c.is_ascii_alphanumeric() || c == '_' {
            let mut ident = String::new();
            while let Some(&c) = chars.peek() {
                if !(c.is_ascii_alphanumeric() || c == '_') {
                    break;
                }
                ident.push(c);
                chars.next();
                column += 1;
            }
            tokens.push(Spanned {
                token: Token::Ident(ident),
                line: start_line,
                column: start_column,
            });
            continue;
        }
        let token = match c {
            '(' => Token::LParen,
            ')' => Token::RParen,
            ',' => Token::Comma,
            '.' if !bnet => Token::Dot,
            '!' if bnet => Token::Bang,
            '&' if bnet => Token::Amp,
            '|' if bnet => Token::Pipe,
            other => {
                return Err(FormulaError::Syntax {
                    line,
                    column,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        chars.next();
        column += 1;
        tokens.push(Spanned {
            token,
            line: start_line,
            column: start_column,
        });
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Spanned>,
    position: usize,
    end: (usize, usize),
}

impl Parser {
    fn new(tokens: Vec<Spanned>, end: (usize, usize)) -> Self {
        Parser {
            tokens,
            position: 0,
            end,
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.position).map(|t| &t.token)
    }

    fn location(&self) -> (usize, usize) {
        self.tokens
            .get(self.position)
            .map(|t| (t.line, t.column))
            .unwrap_or(self.end)
    }

    fn error(&self, message: impl Into<String>) -> FormulaError {
        let (line, column) = self.location();
        FormulaError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn unexpected(&self, expected: &str) -> FormulaError {
        match self.peek() {
            Some(token) => self.error(format!("expected {expected}, found {token}")),
            None => self.error(format!("expected {expected}, found end of input")),
        }
    }

    fn expect(&mut self, token: Token) -> Result<(), FormulaError> {
        if self.peek() == Some(&token) {
            self.position += 1;
            Ok(())
        } else {
            Err(self.unexpected(&token.to_string()))
        }
    }

    fn ident(&mut self) -> Result<String, FormulaError> {
        match self.peek() {
            Some(Token::Ident(name)) => {
                let name = name.clone();
                self.position += 1;
                Ok(name)
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    fn name(&mut self) -> Result<String, FormulaError> {
        let location = self.location();
        let name = self.ident()?;
        if is_valid_name(&name) {
            Ok(name)
        } else {
            Err(FormulaError::Syntax {
                line: location.0,
                column: location.1,
                message: format!("invalid argument name `{name}`"),
            })
        }
    }

    fn at_end(&self) -> bool {
        self.position >= self.tokens.len()
    }

    // ADF expression syntax: name | c(v) | c(f) | neg(E) | op(E,E).
    fn adf_expr(&mut self) -> Result<Formula, FormulaError> {
        let location = self.location();
        let head = self.name()?;
        if self.peek() != Some(&Token::LParen) {
            return Ok(Formula::Var(head));
        }
        self.position += 1;
        let formula = match head.as_str() {
            "c" => {
                let value = self.ident()?;
                match value.as_str() {
                    "v" => Formula::Const(true),
                    "f" => Formula::Const(false),
                    other => {
                        return Err(FormulaError::Syntax {
                            line: location.0,
                            column: location.1,
                            message: format!("unknown constant `c({other})`"),
                        })
                    }
                }
            }
            "neg" => Formula::not(self.adf_expr()?),
            "and" | "or" | "imp" | "iff" | "xor" => {
                let l = self.adf_expr()?;
                self.expect(Token::Comma)?;
                let r = self.adf_expr()?;
                match head.as_str() {
                    "and" => Formula::and(l, r),
                    "or" => Formula::or(l, r),
                    "imp" => Formula::imp(l, r),
                    "iff" => Formula::iff(l, r),
                    _ => Formula::xor(l, r),
                }
            }
            other => {
                return Err(FormulaError::Syntax {
                    line: location.0,
                    column: location.1,
                    message: format!("unknown connective `{other}`"),
                })
            }
        };
        self.expect(Token::RParen)?;
        Ok(formula)
    }

    // bnet syntax: or := and ('|' and)*; and := unary ('&' unary)*.
    fn bnet_or(&mut self) -> Result<Formula, FormulaError> {
        let mut formula = self.bnet_and()?;
        while self.peek() == Some(&Token::Pipe) {
            self.position += 1;
            formula = Formula::or(formula, self.bnet_and()?);
        }
        Ok(formula)
    }

    fn bnet_and(&mut self) -> Result<Formula, FormulaError> {
        let mut formula = self.bnet_unary()?;
        while self.peek() == Some(&Token::Amp) {
            self.position += 1;
            formula = Formula::and(formula, self.bnet_unary()?);
        }
        Ok(formula)
    }

    fn bnet_unary(&mut self) -> Result<Formula, FormulaError> {
        match self.peek() {
            Some(Token::Bang) => {
                self.position += 1;
                Ok(Formula::not(self.bnet_unary()?))
            }
            Some(Token::LParen) => {
                self.position += 1;
                let formula = self.bnet_or()?;
                self.expect(Token::RParen)?;
                Ok(formula)
            }
            Some(Token::Ident(name)) if name == "0" || name == "1" => {
                let value = name == "1";
                self.position += 1;
                Ok(Formula::Const(value))
            }
            Some(Token::Ident(_)) => Ok(Formula::Var(self.name()?)),
            _ => Err(self.unexpected("an expression")),
        }
    }
}

fn end_of(text: &str) -> (usize, usize) {
    let line = text.lines().count().max(1);
    let column = text.lines().last().map(|l| l.chars().count() + 1).unwrap_or(1);
    (line, column)
}

/// Parses the `s(NAME).` / `ac(NAME, EXPR).` ADF instance format.
pub fn parse_adf(text: &str) -> Result<Adf, FormulaError> {
    let tokens = tokenize(text, false, 1)?;
    let mut parser = Parser::new(tokens, end_of(text));
    let mut arguments: Vec<String> = Vec::new();
    let mut declared: HashMap<String, usize> = HashMap::new();
    // (argument name, condition, line)
    let mut raw_conditions: Vec<(String, Formula, usize)> = Vec::new();
    while !parser.at_end() {
        let (line, column) = parser.location();
        let keyword = parser.ident()?;
        parser.expect(Token::LParen)?;
        match keyword.as_str() {
            "s" => {
                let name = parser.name()?;
                if declared.insert(name.clone(), arguments.len()).is_some() {
                    return Err(FormulaError::DuplicateArgument { name });
                }
                arguments.push(name);
            }
            "ac" => {
                let name = parser.name()?;
                parser.expect(Token::Comma)?;
                let condition = parser.adf_expr()?;
                raw_conditions.push((name, condition, line));
            }
            other => {
                return Err(FormulaError::Syntax {
                    line,
                    column,
                    message: format!("unknown statement `{other}`"),
                })
            }
        }
        parser.expect(Token::RParen)?;
        parser.expect(Token::Dot)?;
    }

    let mut conditions: Vec<Option<Formula>> = vec![None; arguments.len()];
    for (name, condition, line) in raw_conditions {
        let Some(&index) = declared.get(&name) else {
            return Err(FormulaError::UndeclaredArgument {
                undeclared: name.clone(),
                name,
                line,
            });
        };
        if let Some(undeclared) = condition.variables().into_iter().find(|v| !declared.contains_key(*v)) {
            return Err(FormulaError::UndeclaredArgument {
                name,
                undeclared: undeclared.to_string(),
                line,
            });
        }
        if conditions[index].is_some() {
            return Err(FormulaError::DuplicateCondition { name, line });
        }
        conditions[index] = Some(condition);
    }
    let conditions = conditions
        .into_iter()
        .zip(&arguments)
        .map(|(c, name)| c.ok_or_else(|| FormulaError::MissingCondition { name: name.clone() }))
        .collect::<Result<Vec<_>, _>>()?;
    Adf::new(arguments, conditions)
}

/// Writes the ADF instance format; the inverse of [`parse_adf`].
pub fn write_adf(adf: &Adf) -> String {
    let mut out = String::new();
    for name in adf.arguments() {
        out.push_str(&format!("s({name}).\n"));
    }
    for (name, condition) in adf.arguments().iter().zip(adf.conditions()) {
        out.push_str(&format!("ac({name},{condition}).\n"));
    }
    out
}

/// Parses the `targets, factors` Boolean-network format. Variables that only occur on
/// right-hand sides become free inputs (`x, x`), appended after the targets in order of
/// first occurrence.
pub fn parse_bnet(text: &str) -> Result<Adf, FormulaError> {
    let mut arguments: Vec<String> = Vec::new();
    let mut conditions: Vec<Formula> = Vec::new();
    let mut targets: HashMap<String, usize> = HashMap::new();
    let mut header_allowed = true;
    for (line_index, raw_line) in text.lines().enumerate() {
        let line_no = line_index + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((name_part, expr_part)) = line.split_once(',') else {
            return Err(FormulaError::Syntax {
                line: line_no,
                column: 1,
                message: "expected `target, factor`".to_string(),
            });
        };
        let name = name_part.trim();
        if header_allowed
            && name.eq_ignore_ascii_case("targets")
            && expr_part.trim().eq_ignore_ascii_case("factors")
        {
            header_allowed = false;
            continue;
        }
        header_allowed = false;
        if !is_valid_name(name) {
            let column = raw_line.find(name).unwrap_or(0) + 1;
            return Err(FormulaError::Syntax {
                line: line_no,
                column,
                message: format!("invalid target name `{name}`"),
            });
        }
        // Offset tokens so that reported columns refer to the original line.
        let expr_offset = raw_line.find(',').expect("line contains a comma") + 1;
        let padded = format!("{}{}", " ".repeat(expr_offset), &raw_line[expr_offset..]);
        let tokens = tokenize(&padded, true, line_no)?;
        let mut parser = Parser::new(tokens, (line_no, raw_line.chars().count() + 1));
        let formula = parser.bnet_or()?;
        if !parser.at_end() {
            return Err(parser.unexpected("`&`, `|` or end of line"));
        }
        if targets.insert(name.to_string(), arguments.len()).is_some() {
            return Err(FormulaError::DuplicateTarget {
                name: name.to_string(),
                line: line_no,
            });
        }
        arguments.push(name.to_string());
        conditions.push(formula);
    }
    let mut inputs: Vec<String> = Vec::new();
    for condition in &conditions {
        for v in condition.variables() {
            if !targets.contains_key(v) && !inputs.iter().any(|i| i == v) {
                inputs.push(v.to_string());
            }
        }
    }
    for input in inputs {
        conditions.push(Formula::Var(input.clone()));
        arguments.push(input);
    }
    Adf::new(arguments, conditions)
}

fn write_bnet_expr(formula: &Formula, out: &mut String) {
    // Precedence: Or = 1, And = 2, Not and atoms = 3. `And` under `Or` is always bracketed.
    fn precedence(f: &Formula) -> u8 {
        match f {
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            _ => 3,
        }
    }
    fn child(f: &Formula, parent: u8, out: &mut String) {
        let own = precedence(f);
        let bracket = own < parent || (parent == 1 && own == 2);
        if bracket {
            out.push('(');
        }
        write_bnet_expr(f, out);
        if bracket {
            out.push(')');
        }
    }
    match formula {
        Formula::Var(name) => out.push_str(name),
        Formula::Const(true) => out.push('1'),
        Formula::Const(false) => out.push('0'),
        Formula::Not(f) => {
            out.push('!');
            child(f, 3, out);
        }
        Formula::And(l, r) => {
            child(l, 2, out);
            out.push_str(" & ");
            child(r, 2, out);
        }
        Formula::Or(l, r) => {
            // Right-nested disjunctions keep their brackets so the tree shape survives.
            child(l, 1, out);
            out.push_str(" | ");
            if matches!(**r, Formula::Or(..)) {
                out.push('(');
                write_bnet_expr(r, out);
                out.push(')');
            } else {
                child(r, 1, out);
            }
        }
        Formula::Imp(..) | Formula::Iff(..) | Formula::Xor(..) => {
            unreachable!("connective must be eliminated before writing bnet")
        }
    }
}

/// Writes a formula using only `&`, `|`, `!`, brackets and constants, after eliminating
/// `Imp`, `Iff` and `Xor`.
pub fn bnet_expression(formula: &Formula) -> String {
    let mut out = String::new();
    write_bnet_expr(&formula.to_basic(), &mut out);
    out
}

/// Writes the Boolean-network format. Fails if eliminating `Xor`/`Iff`/`Imp` from some
/// condition would produce more than `budget` AST nodes.
pub fn write_bnet(adf: &Adf, budget: usize) -> Result<String, FormulaError> {
    let mut out = String::from("targets, factors\n");
    for (name, condition) in adf.arguments().iter().zip(adf.conditions()) {
        let size = condition.basic_size();
        if size > budget {
            return Err(FormulaError::SizeLimit {
                name: name.clone(),
                size,
                budget,
            });
        }
        out.push_str(name);
        out.push_str(", ");
        out.push_str(&bnet_expression(condition));
        out.push('\n');
    }
    Ok(out)
}
