//! The word text format.
//!
//! First line `rank=<n>`, then whitespace-separated letter tokens: `x<N>`
//! for a generator, `x<N>'` for its inverse. On input, a fully alphabetic
//! token is read in compact form instead — each lowercase letter a..z is
//! generator 1..26, uppercase its inverse. Output always uses the canonical
//! `x<N>` form, 16 tokens per line.

use anyhow::{anyhow, bail, Context, Result};
use hangnail_core::word::{Letter, Word};
use std::fmt::Write as _;

pub fn format_word(w: &Word) -> String {
    let mut out = format!("rank={}\n", w.rank());
    for (i, l) in w.letters().enumerate() {
        let sep = if i == 0 {
            ""
        } else if i % 16 == 0 {
            "\n"
        } else {
            " "
        };
        let _ = write!(out, "{sep}{l}");
    }
    if !w.is_empty() {
        out.push('\n');
    }
    out
}

fn parse_canonical(tok: &str) -> Option<Letter> {
    let (body, inverse) = match tok.strip_suffix('\'') {
        Some(rest) => (rest, true),
        None => (tok, false),
    };
    let digits = body.strip_prefix('x')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let index: u32 = digits.parse().ok()?;
    if index == 0 {
        return None;
    }
    let v = index as i32;
    Letter::from_signed(if inverse { -v } else { v })
}

fn parse_compact(tok: &str, letters: &mut Vec<Letter>) -> Result<()> {
    for ch in tok.chars() {
        let v = match ch {
            'a'..='z' => ch as i32 - 'a' as i32 + 1,
            'A'..='Z' => -(ch as i32 - 'A' as i32 + 1),
            _ => bail!("bad compact letter '{ch}' in token '{tok}'"),
        };
        letters.push(Letter::from_signed(v).expect("nonzero index"));
    }
    Ok(())
}

pub fn parse_word(text: &str) -> Result<Word> {
    let mut lines = text.lines();
    let header = loop {
        match lines.next() {
            Some(l) if l.trim().is_empty() => continue,
            Some(l) => break l.trim(),
            None => bail!("empty word file"),
        }
    };
    let rank: u32 = header
        .strip_prefix("rank=")
        .ok_or_else(|| anyhow!("first line must be rank=<n>, got '{header}'"))?
        .trim()
        .parse()
        .context("bad rank")?;

    let mut letters = Vec::new();
    for tok in lines.flat_map(str::split_whitespace) {
        if let Some(l) = parse_canonical(tok) {
            letters.push(l);
        } else if tok.bytes().all(|b| b.is_ascii_alphabetic()) {
            parse_compact(tok, &mut letters)?;
        } else {
            bail!("bad word token '{tok}'");
        }
    }
    Word::reduce(rank, letters).map_err(|e| anyhow!("{e}"))
}
