//! Text pictures of mesh patterns.

use std::fmt::Write;

use meshcide_core::MeshPattern;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Ascii,
    Tikz,
    Json,
}

pub fn render(pi: &MeshPattern, format: Format) -> String {
    match format {
        Format::Ascii => ascii(pi),
        Format::Tikz => tikz(pi),
        Format::Json => crate::json::pattern(pi).to_string() + "\n",
    }
}

/// A `(2k+3)`-square character grid, top row first. Even rows and columns
/// carry lattice points (`o` for pattern points, `+` otherwise) joined by
/// `-` and `|`; odd ones carry cells, `#` when shaded.
pub fn ascii(pi: &MeshPattern) -> String {
    let k = pi.len();
    let size = 2 * k + 3;
    let mut out = String::with_capacity(size * (size + 1));
    for r in 0..size {
        for c in 0..size {
            let ch = match (r % 2, c % 2) {
                (0, 0) => {
                    let (i, j) = (c / 2, k + 1 - r / 2);
                    if pi.has_point(i, j) {
                        'o'
                    } else {
                        '+'
                    }
                }
                (0, 1) => '-',
                (1, 0) => '|',
                _ => {
                    let (a, b) = (c / 2, k - r / 2);
                    if pi.mesh().contains(a, b) {
                        '#'
                    } else {
                        '.'
                    }
                }
            };
            out.push(ch);
        }
        out.push('\n');
    }
    out
}

pub fn tikz(pi: &MeshPattern) -> String {
    let k = pi.len();
    let mut out = String::from("\\begin{tikzpicture}[scale=.4]\n");
    for s in pi.mesh().squares() {
        let _ = writeln!(
            out,
            "  \\fill[lightgray] ({},{}) rectangle ++(1,1);",
            s.col, s.row
        );
    }
    for x in 1..=k {
        let _ = writeln!(out, "  \\draw[gray] ({x},0) -- ({x},{});", k + 1);
        let _ = writeln!(out, "  \\draw[gray] (0,{x}) -- ({},{x});", k + 1);
    }
    for (i, j) in pi.perm().points() {
        let _ = writeln!(out, "  \\fill[black] ({i},{j}) circle (5pt);");
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}
