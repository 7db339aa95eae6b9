#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use lamring_core::poly::MultiPoly;

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("data").join(name)
}

pub fn data_str(name: &str) -> String {
    data(name).to_str().expect("utf-8 path").to_string()
}

pub fn read_data(name: &str) -> String {
    fs::read_to_string(data(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// `command args: transcription` lines, skipping comments.
pub fn golden(name: &str) -> Vec<(Vec<String>, String)> {
    read_data(name)
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (cmd, text) = l.split_once(':').unwrap_or_else(|| panic!("bad golden line {l:?}"));
            (cmd.split_whitespace().map(String::from).collect(), text.trim().to_string())
        })
        .collect()
}

/// The Adams transcriptions, `adams[k - 1]` in the variables `lk(r)`.
pub fn adams_transcriptions() -> Vec<String> {
    golden("adams.txt").into_iter().map(|(_, t)| t).collect()
}

/// Replaces `PsiK(x)` by the transcription of `Ψ^K` in the argument `x`.
pub fn expand_psi(text: &str, adams: &[String]) -> String {
    let mut out = String::new();
    let mut rest = text;
    while let Some(at) = rest.find("Psi") {
        out.push_str(&rest[..at]);
        let tail = &rest[at + 3..];
        let digits: String = tail.chars().take_while(char::is_ascii_digit).collect();
        let k: usize = digits.parse().expect("Psi index");
        let tail = &tail[digits.len()..];
        let close = tail.find(')').expect("Psi argument");
        let arg = &tail[1..close];
        out.push('(');
        out.push_str(&adams[k - 1].replace("(r)", &format!("({arg})")));
        out.push(')');
        rest = &tail[close + 1..];
    }
    out.push_str(rest);
    out
}

pub fn poly(text: &str) -> MultiPoly {
    text.parse().unwrap_or_else(|e| panic!("{text}: {e}"))
}

/// A golden transcription in canonical form.
pub fn canonical(text: &str, adams: &[String]) -> MultiPoly {
    poly(&expand_psi(text, adams))
}
