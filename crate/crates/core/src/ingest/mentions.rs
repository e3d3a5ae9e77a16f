use crate::handle::{is_handle_char, Handle, MAX_HANDLE_LEN};

/// Extracts `@mentions` from post text, in order of appearance.
///
/// A mention is an `@` at the start of the text or after a character outside
/// `[A-Za-z0-9_@]`, followed by 1 to 15 handle characters. Runs longer than
/// 15 are cut at 15; the rest of the run is plain text. Duplicates are kept.
pub fn extract_mentions(text: &str) -> Vec<Handle> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let mut prev: Option<char> = None;

    while let Some(c) = chars.next() {
        let starts_mention = c == '@' && prev.is_none_or(|p| !is_handle_char(p) && p != '@');
        if !starts_mention {
            prev = Some(c);
            continue;
        }
        let mut name = String::new();
        while name.len() < MAX_HANDLE_LEN {
            match chars.peek() {
                Some(&n) if is_handle_char(n) => {
                    name.push(n);
                    chars.next();
                }
                _ => break,
            }
        }
        prev = Some(name.chars().last().unwrap_or('@'));
        if !name.is_empty() {
            out.push(Handle::new(&name).expect("scanned characters form a valid handle"));
        }
    }
    out
}
