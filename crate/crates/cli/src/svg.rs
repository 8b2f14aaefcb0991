//! Minimal SVG 1.1 writer with fixed number formatting, so identical
//! scenes give identical bytes.

use std::fmt::Write as _;

/// `v` rounded to 9 significant digits, printed without trailing zeros.
pub fn num(v: f64) -> String {
    let rounded: f64 = format!("{v:.8e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        return "0".to_string();
    }
    format!("{rounded}")
}

pub fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Text safe inside `<!-- -->`.
pub fn comment_text(s: &str) -> String {
    let mut out = s.to_string();
    while out.contains("--") {
        out = out.replace("--", "- -");
    }
    if out.ends_with('-') {
        out.push(' ');
    }
    out
}

pub struct Document {
    body: String,
    width: u32,
    height: u32,
    header: Vec<String>,
    style: String,
}

impl Document {
    pub fn new(width: u32, height: u32, header: Vec<String>, style: &str) -> Self {
        Document { body: String::new(), width, height, header, style: style.to_string() }
    }

    pub fn open_group(&mut self, class: &str) {
        let _ = writeln!(self.body, "<g class=\"{class}\">");
    }

    pub fn close_group(&mut self) {
        self.body.push_str("</g>\n");
    }

    pub fn circle(&mut self, class: &str, cx: f64, cy: f64, r: f64, title: Option<&str>) {
        let _ = write!(self.body, "<circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"{}\"", num(cx), num(cy), num(r));
        self.close_element("circle", title);
    }

    pub fn line(&mut self, class: &str, a: (f64, f64), b: (f64, f64), title: Option<&str>) {
        let _ = write!(
            self.body,
            "<line class=\"{class}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"",
            num(a.0),
            num(a.1),
            num(b.0),
            num(b.1)
        );
        self.close_element("line", title);
    }

    pub fn text(&mut self, class: &str, x: f64, y: f64, content: &str) {
        let _ = writeln!(
            self.body,
            "<text class=\"{class}\" x=\"{}\" y=\"{}\">{}</text>",
            num(x),
            num(y),
            escape(content)
        );
    }

    fn close_element(&mut self, tag: &str, title: Option<&str>) {
        match title {
            Some(t) => {
                let _ = writeln!(self.body, "><title>{}</title></{tag}>", escape(t));
            }
            None => self.body.push_str("/>\n"),
        }
    }

    pub fn finish(self) -> String {
        let (w, h) = (self.width, self.height);
        let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n<!--\n");
        for line in &self.header {
            let _ = writeln!(out, "  {}", comment_text(line));
        }
        out.push_str("-->\n");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
        );
        let _ = writeln!(out, "<defs>\n<clipPath id=\"viewport\"><rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\"/></clipPath>\n</defs>");
        let _ = writeln!(out, "<style type=\"text/css\"><![CDATA[\n{}]]></style>", self.style);
        let _ = writeln!(out, "<rect class=\"background\" x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\"/>");
        out.push_str("<g clip-path=\"url(#viewport)\">\n");
        out.push_str(&self.body);
        out.push_str("</g>\n</svg>\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_keep_nine_significant_digits() {
        assert_eq!(num(0.0), "0");
        assert_eq!(num(-0.0), "0");
        assert_eq!(num(1.0), "1");
        assert_eq!(num(400.0), "400");
        assert_eq!(num(1.0 / 3.0), "0.333333333");
        assert_eq!(num(-123456.789012), "-123456.789");
        assert_eq!(num(2.0f64.sqrt() * 1e-3), "0.00141421356");
    }

    #[test]
    fn comments_never_contain_double_hyphens() {
        assert_eq!(comment_text("a--b"), "a- -b");
        assert_eq!(comment_text("x-"), "x- ");
        assert!(!comment_text("---").contains("--"));
    }

    #[test]
    fn markup_is_escaped() {
        assert_eq!(escape("a<b & \"c\">"), "a&lt;b &amp; &quot;c&quot;&gt;");
    }
}
