//! Recursive-descent parser for a small Java subset: classes with fields and
//! methods, and the statement forms if/else, while, for, return, assignment,
//! variable declaration, method invocation, throw, and try/catch.
//!
//! Expressions are not parsed into subtrees; they are captured as normalized
//! token text, so formatting never changes a value. `package` and `import`
//! directives and annotations are skipped. Constructs outside the subset are
//! reported as unsupported, naming the offending position.

use super::decl::MODIFIERS;
use super::kinds::{
    ASSIGNMENT, ATTRIBUTE, CATCH_CLAUSE, CLASS, COMPILATION_UNIT, ELSE_PART, FOR_STATEMENT,
    IF_STATEMENT, METHOD, METHOD_INVOCATION, PARAMETER, RETURN_STATEMENT, THEN_PART,
    THROW_STATEMENT, TRY_STATEMENT, VARIABLE_DECLARATION, WHILE_STATEMENT,
};
use super::tree::{Origin, Range, SourceTree, TreeNode};
use crate::error::{Error, Result};

const ASSIGN_OPS: &[&str] = &[
    "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>=",
];

pub fn parse_mini_java(source: &str, origin: Origin) -> Result<SourceTree> {
    let tokens = lex(source)?;
    let mut parser = Parser { tokens, pos: 0 };
    let root = parser.compilation_unit()?;
    Ok(SourceTree::new(origin, root))
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TokenKind {
    Word,
    Number,
    Literal,
    Punct,
}

#[derive(Debug, Clone)]
struct Token {
    text: String,
    kind: TokenKind,
    line: u32,
    col: u32,
    end_line: u32,
    end_col: u32,
}

impl Token {
    fn start_range(&self) -> Range {
        Range::new(self.line, self.col, self.end_line, self.end_col)
    }
}

const PUNCTUATORS: &[&str] = &[
    ">>>=", ">>>", "<<=", ">>=", "...", "->", "::", "++", "--", "<<", ">>", "<=", ">=", "==",
    "!=", "&&", "||", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "+", "-", "*", "/", "%",
    "=", "<", ">", "!", "&", "|", "^", "~", "?", ":", ";", ",", ".", "(", ")", "{", "}", "[",
    "]", "@",
];

fn lex(source: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = source.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    let mut line = 1u32;
    let mut col = 1u32;

    let err = |line: u32, col: u32, message: String| Error::Parse {
        line,
        column: col,
        message,
    };

    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '/' && i + 1 < chars.len() && chars[i + 1] == '/' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
                col += 1;
            }
            continue;
        }
        if c == '/' && i + 1 < chars.len() && chars[i + 1] == '*' {
            let (sl, sc) = (line, col);
            i += 2;
            col += 2;
            loop {
                if i >= chars.len() {
                    return Err(err(sl, sc, "unterminated block comment".into()));
                }
                if chars[i] == '\n' {
                    line += 1;
                    col = 1;
                    i += 1;
                } else if chars[i] == '*' && i + 1 < chars.len() && chars[i + 1] == '/' {
                    i += 2;
                    col += 2;
                    break;
                } else {
                    i += 1;
                    col += 1;
                }
            }
            continue;
        }
        let (sl, sc) = (line, col);
        if c.is_alphabetic() || c == '_' || c == '$' {
            let mut text = String::new();
            while i < chars.len()
                && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '$')
            {
                text.push(chars[i]);
                i += 1;
                col += 1;
            }
            tokens.push(Token {
                text,
                kind: TokenKind::Word,
                line: sl,
                col: sc,
                end_line: line,
                end_col: col - 1,
            });
            continue;
        }
        if c.is_ascii_digit() {
            let mut text = String::new();
            while i < chars.len()
                && (chars[i].is_alphanumeric() || chars[i] == '.' || chars[i] == '_')
            {
                text.push(chars[i]);
                i += 1;
                col += 1;
            }
            tokens.push(Token {
                text,
                kind: TokenKind::Number,
                line: sl,
                col: sc,
                end_line: line,
                end_col: col - 1,
            });
            continue;
        }
        if c == '"' || c == '\'' {
            let quote = c;
            let mut text = String::new();
            text.push(quote);
            i += 1;
            col += 1;
            loop {
                if i >= chars.len() || chars[i] == '\n' {
                    return Err(err(sl, sc, "unterminated literal".into()));
                }
                let ch = chars[i];
                text.push(ch);
                i += 1;
                col += 1;
                if ch == '\\' {
                    if i >= chars.len() || chars[i] == '\n' {
                        return Err(err(sl, sc, "unterminated literal".into()));
                    }
                    text.push(chars[i]);
                    i += 1;
                    col += 1;
                } else if ch == quote {
                    break;
                }
            }
            tokens.push(Token {
                text,
                kind: TokenKind::Literal,
                line: sl,
                col: sc,
                end_line: line,
                end_col: col - 1,
            });
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 4)].iter().collect();
        let mut matched = None;
        for p in PUNCTUATORS {
            if rest.starts_with(p) {
                matched = Some(*p);
                break;
            }
        }
        match matched {
            Some(p) => {
                let len = p.chars().count() as u32;
                i += p.chars().count();
                col += len;
                tokens.push(Token {
                    text: p.to_string(),
                    kind: TokenKind::Punct,
                    line: sl,
                    col: sc,
                    end_line: line,
                    end_col: col - 1,
                });
            }
            None => return Err(err(sl, sc, format!("unexpected character '{c}'"))),
        }
    }
    Ok(tokens)
}

/// Join tokens into normalized text: single spaces, except none around `.`,
/// before `,;)]`, after `([`, or before `(`/`[` after a name. Equal token
/// sequences always yield equal text.
fn join_tokens(tokens: &[Token]) -> String {
    const CALL_KEYWORDS: &[&str] = &[
        "if", "while", "for", "return", "throw", "new", "catch", "switch", "do", "else", "try",
        "assert", "synchronized",
    ];
    let mut out = String::new();
    for (i, t) in tokens.iter().enumerate() {
        if i > 0 {
            let prev = &tokens[i - 1];
            let glue_prev = matches!(prev.text.as_str(), "(" | "[" | "." | "@");
            let glue_cur = match t.text.as_str() {
                "." | "," | ";" | ")" | "]" => true,
                "(" | "[" => {
                    (prev.kind == TokenKind::Word && !CALL_KEYWORDS.contains(&prev.text.as_str()))
                        || prev.text == ")"
                        || prev.text == "]"
                }
                _ => false,
            };
            if !glue_prev && !glue_cur {
                out.push(' ');
            }
        }
        out.push_str(&t.text);
    }
    out
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn eof(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_at(&self, offset: usize) -> Option<&Token> {
        self.tokens.get(self.pos + offset)
    }

    fn at(&self, text: &str) -> bool {
        self.peek().is_some_and(|t| t.text == text)
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        self.pos += 1;
        t
    }

    fn eat(&mut self, text: &str) -> bool {
        if self.at(text) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn here(&self) -> (u32, u32) {
        match self.peek() {
            Some(t) => (t.line, t.col),
            None => self
                .tokens
                .last()
                .map(|t| (t.end_line, t.end_col + 1))
                .unwrap_or((1, 1)),
        }
    }

    fn parse_err(&self, message: impl Into<String>) -> Error {
        let (line, column) = self.here();
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn unsupported(&self, construct: impl Into<String>) -> Error {
        let (line, col) = self.here();
        Error::UnsupportedConstruct {
            line,
            column: col,
            construct: construct.into(),
        }
    }

    fn expect(&mut self, text: &str) -> Result<Token> {
        if self.at(text) {
            Ok(self.advance())
        } else {
            let found = self
                .peek()
                .map(|t| format!("'{}'", t.text))
                .unwrap_or_else(|| "end of input".into());
            Err(self.parse_err(format!("expected '{text}', found {found}")))
        }
    }

    fn expect_word(&mut self, what: &str) -> Result<Token> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Word => Ok(self.advance()),
            Some(t) => {
                let msg = format!("expected {what}, found '{}'", t.text);
                Err(self.parse_err(msg))
            }
            None => Err(self.parse_err(format!("expected {what}, found end of input"))),
        }
    }

    fn compilation_unit(&mut self) -> Result<TreeNode> {
        while self.at("package") || self.at("import") {
            while !self.eof() && !self.at(";") {
                self.pos += 1;
            }
            self.expect(";")?;
        }
        let mut classes = Vec::new();
        while !self.eof() {
            self.skip_annotations()?;
            if self.eof() {
                break;
            }
            let modifiers = self.modifiers();
            if self.at("class") {
                classes.push(self.class_decl(modifiers)?);
            } else if self.at("interface") || self.at("enum") {
                return Err(self.unsupported(format!("{} declaration", self.peek().unwrap().text)));
            } else if modifiers.is_empty() && self.eof() {
                break;
            } else {
                return Err(self.unsupported("top-level declaration"));
            }
        }
        let range = match (self.tokens.first(), self.tokens.last()) {
            (Some(first), Some(last)) => {
                Range::new(first.line, first.col, last.end_line, last.end_col)
            }
            _ => Range::point(1, 1),
        };
        let mut root = TreeNode::new(COMPILATION_UNIT, "", range);
        root.children = classes;
        Ok(root)
    }

    fn skip_annotations(&mut self) -> Result<()> {
        while self.at("@") {
            self.advance();
            self.expect_word("annotation name")?;
            if self.at("(") {
                self.advance();
                self.skip_balanced_parens()?;
                self.expect(")")?;
            }
        }
        Ok(())
    }

    fn modifiers(&mut self) -> Vec<Token> {
        let mut out = Vec::new();
        while let Some(t) = self.peek() {
            if t.kind == TokenKind::Word && MODIFIERS.contains(&t.text.as_str()) {
                out.push(self.advance());
            } else {
                break;
            }
        }
        out
    }

    fn class_decl(&mut self, modifiers: Vec<Token>) -> Result<TreeNode> {
        let class_kw = self.expect("class")?;
        let start = modifiers.first().unwrap_or(&class_kw).start_range();
        let name = self.expect_word("class name")?;
        let mut header: Vec<Token> = modifiers;
        header.push(class_kw);
        header.push(name);
        if self.at("extends") {
            header.push(self.advance());
            header.extend(self.type_tokens()?);
        }
        if self.at("implements") {
            header.push(self.advance());
            loop {
                header.extend(self.type_tokens()?);
                if self.at(",") {
                    header.push(self.advance());
                } else {
                    break;
                }
            }
        }
        self.expect("{")?;
        let mut members = Vec::new();
        loop {
            if self.at("}") {
                break;
            }
            if self.eof() {
                return Err(self.parse_err("expected '}' before end of input"));
            }
            members.push(self.member()?);
        }
        let close = self.expect("}")?;
        let mut node = TreeNode::new(
            CLASS,
            join_tokens(&header),
            Range::new(start.start_line, start.start_col, close.end_line, close.end_col),
        );
        node.children = members;
        Ok(node)
    }

    fn member(&mut self) -> Result<TreeNode> {
        self.skip_annotations()?;
        let modifiers = self.modifiers();
        if self.at("class") || self.at("interface") || self.at("enum") {
            return Err(self.unsupported("nested type declaration"));
        }
        // Constructor: a name directly followed by an argument list.
        let is_constructor = self.peek().is_some_and(|t| t.kind == TokenKind::Word)
            && self.peek_at(1).is_some_and(|t| t.text == "(");
        if is_constructor {
            let name = self.expect_word("constructor name")?;
            return self.method_decl(modifiers, Vec::new(), name);
        }
        let type_toks = self.type_tokens()?;
        let name = self.expect_word("member name")?;
        if self.at("(") {
            self.method_decl(modifiers, type_toks, name)
        } else {
            self.field_decl(modifiers, type_toks, name)
        }
    }

    fn field_decl(
        &mut self,
        modifiers: Vec<Token>,
        type_toks: Vec<Token>,
        name: Token,
    ) -> Result<TreeNode> {
        let start = modifiers
            .first()
            .or_else(|| type_toks.first())
            .unwrap_or(&name)
            .start_range();
        let mut text: Vec<Token> = modifiers;
        text.extend(type_toks);
        text.push(name);
        let tail = self.tokens_until_semicolon()?;
        text.extend(tail.tokens);
        Ok(TreeNode::new(
            ATTRIBUTE,
            join_tokens(&text),
            Range::new(
                start.start_line,
                start.start_col,
                tail.semicolon.end_line,
                tail.semicolon.end_col,
            ),
        ))
    }

    fn method_decl(
        &mut self,
        modifiers: Vec<Token>,
        ret_toks: Vec<Token>,
        name: Token,
    ) -> Result<TreeNode> {
        let start = modifiers
            .first()
            .or_else(|| ret_toks.first())
            .unwrap_or(&name)
            .start_range();
        self.expect("(")?;
        let mut params = Vec::new();
        if !self.at(")") {
            loop {
                let mut ptoks = Vec::new();
                if self.at("final") {
                    ptoks.push(self.advance());
                }
                ptoks.extend(self.type_tokens()?);
                let pname = self.expect_word("parameter name")?;
                let prange = Range::new(
                    ptoks.first().unwrap_or(&pname).line,
                    ptoks.first().unwrap_or(&pname).col,
                    pname.end_line,
                    pname.end_col,
                );
                ptoks.push(pname);
                params.push(TreeNode::new(PARAMETER, join_tokens(&ptoks), prange));
                if !self.eat(",") {
                    break;
                }
            }
        }
        self.expect(")")?;
        let mut header: Vec<Token> = modifiers;
        header.extend(ret_toks);
        header.push(name);
        if self.at("throws") {
            header.push(self.advance());
            loop {
                header.extend(self.type_tokens()?);
                if self.at(",") {
                    header.push(self.advance());
                } else {
                    break;
                }
            }
        }
        let mut children = params;
        let end;
        if self.at(";") {
            let semi = self.advance();
            end = (semi.end_line, semi.end_col);
        } else {
            self.expect("{")?;
            let (body, close) = self.statements_until_close()?;
            children.extend(body);
            end = (close.end_line, close.end_col);
        }
        let mut node = TreeNode::new(
            METHOD,
            join_tokens(&header),
            Range::new(start.start_line, start.start_col, end.0, end.1),
        );
        node.children = children;
        Ok(node)
    }

    /// A dotted identifier with optional generics and array brackets.
    fn type_tokens(&mut self) -> Result<Vec<Token>> {
        let mut out = vec![self.expect_word("type")?];
        loop {
            if self.at(".") && self.peek_at(1).is_some_and(|t| t.kind == TokenKind::Word) {
                out.push(self.advance());
                out.push(self.advance());
            } else if self.at("<") {
                let mut depth = 0i32;
                loop {
                    let Some(t) = self.peek() else {
                        return Err(self.parse_err("unbalanced generic arguments"));
                    };
                    depth += match t.text.as_str() {
                        "<" => 1,
                        ">" => -1,
                        ">>" => -2,
                        ">>>" => -3,
                        _ => 0,
                    };
                    out.push(self.advance());
                    if depth <= 0 {
                        break;
                    }
                }
            } else if self.at("[") {
                out.push(self.advance());
                out.push(self.expect("]")?);
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn statements_until_close(&mut self) -> Result<(Vec<TreeNode>, Token)> {
        let mut stmts = Vec::new();
        loop {
            if self.at("}") {
                return Ok((stmts, self.advance()));
            }
            if self.eof() {
                return Err(self.parse_err("expected '}' before end of input"));
            }
            stmts.push(self.statement()?);
        }
    }

    fn statement(&mut self) -> Result<TreeNode> {
        let Some(tok) = self.peek() else {
            return Err(self.parse_err("expected statement, found end of input"));
        };
        match tok.text.as_str() {
            "if" => self.if_statement(),
            "while" => self.while_statement(),
            "for" => self.for_statement(),
            "return" => self.return_statement(),
            "throw" => self.throw_statement(),
            "try" => self.try_statement(),
            "{" => Err(self.unsupported("bare block")),
            ";" => Err(self.unsupported("empty statement")),
            "else" => Err(self.parse_err("unexpected 'else'")),
            "do" | "switch" | "break" | "continue" | "synchronized" | "assert" => {
                Err(self.unsupported(format!("'{}' statement", tok.text)))
            }
            _ => self.expression_or_declaration(),
        }
    }

    /// A branch body: either a braced block or a single statement. Returns
    /// the statements plus the covered range.
    fn branch(&mut self) -> Result<(Vec<TreeNode>, Range)> {
        if self.at("{") {
            let open = self.advance();
            let (stmts, close) = self.statements_until_close()?;
            Ok((
                stmts,
                Range::new(open.line, open.col, close.end_line, close.end_col),
            ))
        } else {
            let stmt = self.statement()?;
            let range = stmt.range;
            Ok((vec![stmt], range))
        }
    }

    fn if_statement(&mut self) -> Result<TreeNode> {
        let kw = self.expect("if")?;
        self.expect("(")?;
        let cond = self.tokens_until_paren_close()?;
        self.expect(")")?;
        let (then_stmts, then_range) = self.branch()?;
        let mut then_part = TreeNode::new(THEN_PART, "", then_range);
        then_part.children = then_stmts;
        let mut children = vec![then_part];
        let mut end = (then_range.end_line, then_range.end_col);
        if self.at("else") {
            self.advance();
            let (else_stmts, else_range) = if self.at("if") {
                let nested = self.if_statement()?;
                let r = nested.range;
                (vec![nested], r)
            } else {
                self.branch()?
            };
            let mut else_part = TreeNode::new(ELSE_PART, "", else_range);
            else_part.children = else_stmts;
            end = (else_range.end_line, else_range.end_col);
            children.push(else_part);
        }
        let mut node = TreeNode::new(
            IF_STATEMENT,
            join_tokens(&cond),
            Range::new(kw.line, kw.col, end.0, end.1),
        );
        node.children = children;
        Ok(node)
    }

    fn while_statement(&mut self) -> Result<TreeNode> {
        let kw = self.expect("while")?;
        self.expect("(")?;
        let cond = self.tokens_until_paren_close()?;
        self.expect(")")?;
        let (body, body_range) = self.branch()?;
        let mut node = TreeNode::new(
            WHILE_STATEMENT,
            join_tokens(&cond),
            Range::new(kw.line, kw.col, body_range.end_line, body_range.end_col),
        );
        node.children = body;
        Ok(node)
    }

    fn for_statement(&mut self) -> Result<TreeNode> {
        let kw = self.expect("for")?;
        self.expect("(")?;
        let header = self.tokens_until_paren_close()?;
        self.expect(")")?;
        let (body, body_range) = self.branch()?;
        let mut node = TreeNode::new(
            FOR_STATEMENT,
            join_tokens(&header),
            Range::new(kw.line, kw.col, body_range.end_line, body_range.end_col),
        );
        node.children = body;
        Ok(node)
    }

    fn return_statement(&mut self) -> Result<TreeNode> {
        let kw = self.expect("return")?;
        let mut toks = vec![kw.clone()];
        let tail = self.tokens_until_semicolon()?;
        toks.extend(tail.tokens);
        Ok(TreeNode::new(
            RETURN_STATEMENT,
            join_tokens(&toks),
            Range::new(kw.line, kw.col, tail.semicolon.end_line, tail.semicolon.end_col),
        ))
    }

    fn throw_statement(&mut self) -> Result<TreeNode> {
        let kw = self.expect("throw")?;
        let mut toks = vec![kw.clone()];
        let tail = self.tokens_until_semicolon()?;
        if tail.tokens.is_empty() {
            return Err(self.parse_err("expected expression after 'throw'"));
        }
        toks.extend(tail.tokens);
        Ok(TreeNode::new(
            THROW_STATEMENT,
            join_tokens(&toks),
            Range::new(kw.line, kw.col, tail.semicolon.end_line, tail.semicolon.end_col),
        ))
    }

    fn try_statement(&mut self) -> Result<TreeNode> {
        let kw = self.expect("try")?;
        self.expect("{")?;
        let (body, close) = self.statements_until_close()?;
        let mut children = body;
        let mut end = (close.end_line, close.end_col);
        while self.at("catch") {
            let ckw = self.advance();
            self.expect("(")?;
            let param = self.tokens_until_paren_close()?;
            self.expect(")")?;
            self.expect("{")?;
            let (cbody, cclose) = self.statements_until_close()?;
            let mut clause = TreeNode::new(
                CATCH_CLAUSE,
                join_tokens(&param),
                Range::new(ckw.line, ckw.col, cclose.end_line, cclose.end_col),
            );
            clause.children = cbody;
            end = (cclose.end_line, cclose.end_col);
            children.push(clause);
        }
        if self.at("finally") {
            return Err(self.unsupported("finally block"));
        }
        let mut node = TreeNode::new(
            TRY_STATEMENT,
            "",
            Range::new(kw.line, kw.col, end.0, end.1),
        );
        node.children = children;
        Ok(node)
    }

    fn expression_or_declaration(&mut self) -> Result<TreeNode> {
        let start = self.here();
        let tail = self.tokens_until_semicolon()?;
        let toks = tail.tokens;
        if toks.is_empty() {
            return Err(self.unsupported("empty statement"));
        }
        let range = Range::new(start.0, start.1, tail.semicolon.end_line, tail.semicolon.end_col);
        let kind = if is_declaration(&toks) {
            VARIABLE_DECLARATION
        } else if has_top_level_assignment(&toks) {
            ASSIGNMENT
        } else if toks.iter().any(|t| t.text == "(") {
            METHOD_INVOCATION
        } else {
            return Err(Error::UnsupportedConstruct {
                line: start.0,
                column: start.1,
                construct: "expression statement".into(),
            });
        };
        Ok(TreeNode::new(kind, join_tokens(&toks), range))
    }

    /// Collect up to, and consume, the `;` that closes the current statement.
    /// Nested parentheses, brackets, and braces are skipped over.
    fn tokens_until_semicolon(&mut self) -> Result<CollectedTail> {
        let mut depth = 0i32;
        let mut tokens = Vec::new();
        loop {
            let Some(t) = self.peek() else {
                return Err(self.parse_err("expected ';' before end of input"));
            };
            match t.text.as_str() {
                "(" | "[" | "{" => depth += 1,
                ")" | "]" | "}" => {
                    if depth == 0 {
                        return Err(self.parse_err(format!("expected ';', found '{}'", t.text)));
                    }
                    depth -= 1;
                }
                ";" if depth == 0 => {
                    let semicolon = self.advance();
                    return Ok(CollectedTail { tokens, semicolon });
                }
                _ => {}
            }
            tokens.push(self.advance());
        }
    }

    /// Collect up to, without consuming, the `)` that balances the already
    /// consumed opening parenthesis.
    fn tokens_until_paren_close(&mut self) -> Result<Vec<Token>> {
        let mut depth = 1i32;
        let mut tokens = Vec::new();
        loop {
            let Some(t) = self.peek() else {
                return Err(self.parse_err("expected ')' before end of input"));
            };
            match t.text.as_str() {
                "(" => depth += 1,
                ")" => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok(tokens);
                    }
                }
                _ => {}
            }
            tokens.push(self.advance());
        }
    }

    fn skip_balanced_parens(&mut self) -> Result<()> {
        self.tokens_until_paren_close().map(|_| ())
    }
}

struct CollectedTail {
    tokens: Vec<Token>,
    semicolon: Token,
}

/// Token shape of a local variable declaration: optional `final`, a type
/// (dotted name, generics, array brackets), a name, then `=`, `,`, or the end.
fn is_declaration(toks: &[Token]) -> bool {
    let mut i = 0;
    if toks.get(i).is_some_and(|t| t.text == "final") {
        i += 1;
    }
    let Some(first) = toks.get(i) else {
        return false;
    };
    if first.kind != TokenKind::Word || MODIFIERS.contains(&first.text.as_str()) {
        return false;
    }
    i += 1;
    loop {
        if toks.get(i).is_some_and(|t| t.text == ".")
            && toks.get(i + 1).is_some_and(|t| t.kind == TokenKind::Word)
        {
            i += 2;
        } else if toks.get(i).is_some_and(|t| t.text == "<") {
            let mut depth = 0i32;
            while let Some(t) = toks.get(i) {
                depth += match t.text.as_str() {
                    "<" => 1,
                    ">" => -1,
                    ">>" => -2,
                    ">>>" => -3,
                    _ => 0,
                };
                i += 1;
                if depth <= 0 {
                    break;
                }
            }
            if depth > 0 {
                return false;
            }
        } else if toks.get(i).is_some_and(|t| t.text == "[")
            && toks.get(i + 1).is_some_and(|t| t.text == "]")
        {
            i += 2;
        } else {
            break;
        }
    }
    let Some(name) = toks.get(i) else {
        return false;
    };
    if name.kind != TokenKind::Word {
        return false;
    }
    i += 1;
    match toks.get(i) {
        None => true,
        Some(t) => t.text == "=" || t.text == ",",
    }
}

fn has_top_level_assignment(toks: &[Token]) -> bool {
    let mut depth = 0i32;
    for t in toks {
        match t.text.as_str() {
            "(" | "[" | "{" => depth += 1,
            ")" | "]" | "}" => depth -= 1,
            text if depth == 0 && ASSIGN_OPS.contains(&text) => return true,
            _ => {}
        }
    }
    false
}
