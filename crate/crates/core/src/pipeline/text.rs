use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactlin::{Field, FieldMatrix};
use crate::tamecat::Param;

/// A non-blank line split into whitespace tokens, with 1-based positions.
#[derive(Clone, Debug)]
pub(crate) struct Line<'a> {
    pub no: usize,
    toks: Vec<(usize, &'a str)>,
    end: usize,
}

impl<'a> Line<'a> {
    pub fn len(&self) -> usize {
        self.toks.len()
    }

    pub fn tok(&self, i: usize) -> Option<&'a str> {
        self.toks.get(i).map(|t| t.1)
    }

    pub fn keyword(&self) -> &'a str {
        self.toks[0].1
    }

    pub fn error(&self, i: usize, message: impl Into<String>) -> Error {
        let column = self.toks.get(i).map_or(self.end, |t| t.0);
        Error::Parse {
            line: self.no,
            column,
            message: message.into(),
        }
    }

    /// Attach this line's position to a library error.
    pub fn wrap(&self, e: Error) -> Error {
        match e {
            e @ Error::Parse { .. } => e,
            other => self.error(0, other.to_string()),
        }
    }

    fn get(&self, i: usize) -> Result<&'a str> {
        self.tok(i)
            .ok_or_else(|| self.error(i, "unexpected end of line"))
    }

    pub fn number<T: FromStr>(&self, i: usize) -> Result<T> {
        let s = self.get(i)?;
        s.parse()
            .map_err(|_| self.error(i, format!("expected a number, found {s:?}")))
    }

    pub fn param(&self, i: usize) -> Result<Param> {
        let s = self.get(i)?;
        s.parse().map_err(|e: Error| self.error(i, e.to_string()))
    }

    pub fn numbers<T: FromStr>(&self, from: usize) -> Result<Vec<T>> {
        (from..self.len()).map(|i| self.number(i)).collect()
    }

    pub fn expect_len(&self, n: usize) -> Result<()> {
        if self.len() > n {
            return Err(self.error(n, "unexpected trailing token"));
        }
        if self.len() < n {
            return Err(self.error(self.len(), "unexpected end of line"));
        }
        Ok(())
    }

    /// `RxC` at token `i`.
    pub fn shape(&self, i: usize) -> Result<(usize, usize)> {
        let s = self.get(i)?;
        let bad = || self.error(i, format!("expected a shape RxC, found {s:?}"));
        let (r, c) = s.split_once('x').ok_or_else(bad)?;
        Ok((r.parse().map_err(|_| bad())?, c.parse().map_err(|_| bad())?))
    }
}

/// Line reader skipping blank lines and `#` comments.
pub(crate) struct Reader<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
    last: usize,
}

impl<'a> Reader<'a> {
    pub fn new(text: &'a str) -> Self {
        let mut lines = Vec::new();
        let mut last = 0;
        for (i, raw) in text.lines().enumerate() {
            last = i + 1;
            let body = raw.split('#').next().unwrap_or("");
            let mut toks = Vec::new();
            let mut start = None;
            for (col, ch) in body
                .char_indices()
                .chain(std::iter::once((body.len(), ' ')))
            {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(col),
                    (true, Some(s)) => {
                        toks.push((body[..s].chars().count() + 1, &body[s..col]));
                        start = None;
                    }
                    _ => {}
                }
            }
            if !toks.is_empty() {
                lines.push(Line {
                    no: i + 1,
                    toks,
                    end: body.chars().count() + 1,
                });
            }
        }
        Reader {
            lines,
            pos: 0,
            last,
        }
    }

    pub fn peek(&self) -> Option<&Line<'a>> {
        self.lines.get(self.pos)
    }

    pub fn peek_keyword(&self) -> Option<&'a str> {
        self.peek().map(Line::keyword)
    }

    pub fn next_line(&mut self) -> Option<Line<'a>> {
        let l = self.lines.get(self.pos).cloned();
        self.pos += usize::from(l.is_some());
        l
    }

    pub fn eof_error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.last + 1,
            column: 1,
            message: message.into(),
        }
    }

    /// The next line, which must start with `kw`.
    pub fn expect(&mut self, kw: &str) -> Result<Line<'a>> {
        match self.next_line() {
            Some(l) if l.keyword() == kw => Ok(l),
            Some(l) => Err(l.error(0, format!("expected `{kw}`, found `{}`", l.keyword()))),
            None => Err(self.eof_error(format!("expected `{kw}`"))),
        }
    }

    /// `R` rows of `C` integers each, reduced into `field`.
    pub fn matrix(&mut self, field: Field, rows: usize, cols: usize) -> Result<FieldMatrix> {
        let mut data = Vec::with_capacity(rows);
        if cols > 0 {
            for _ in 0..rows {
                let l = self
                    .next_line()
                    .ok_or_else(|| self.eof_error("matrix ends early"))?;
                let row: Vec<i64> = l.numbers(0)?;
                if row.len() != cols {
                    return Err(l.error(
                        row.len().min(cols),
                        format!("expected {cols} entries, found {}", row.len()),
                    ));
                }
                data.push(row);
            }
        }
        FieldMatrix::from_rows(field, cols, &data)
    }

    /// An optional `field p` line; `explicit` wins unless the file disagrees with it.
    pub fn field(&mut self, explicit: Option<Field>) -> Result<Field> {
        if self.peek_keyword() != Some("field") {
            return Ok(explicit.unwrap_or(Field::F2));
        }
        let l = self.next_line().expect("peeked");
        l.expect_len(2)?;
        let p: u32 = l.number(1)?;
        let f = Field::new(p).map_err(|e| l.error(1, e.to_string()))?;
        match explicit {
            Some(e) if e != f => Err(l.wrap(Error::FieldMismatch {
                left: e.modulus(),
                right: p,
            })),
            _ => Ok(f),
        }
    }
}

pub(crate) fn write_matrix(out: &mut String, head: &str, m: &FieldMatrix) {
    out.push_str(&format!("{head} {}x{}\n", m.rows(), m.cols()));
    if m.cols() == 0 {
        return;
    }
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(u32::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
}

pub(crate) fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}
