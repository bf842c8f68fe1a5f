use super::{Row, SpinDiagram, Strand};

fn superscript(k: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    k.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

/// Two text rows, top then bottom. Isolated vertices show as `⊙ᵏ` with their
/// canonical label; other vertices as `●`. Arcs and through strings are
/// listed underneath.
pub fn render_ascii(d: &SpinDiagram) -> String {
    let mut label = 0;
    let mut cells = |r: Row| -> Vec<String> {
        d.row(r)
            .iter()
            .map(|s| match s {
                Strand::Isolated => {
                    label += 1;
                    format!("⊙{}", superscript(label))
                }
                _ => "●".to_string(),
            })
            .collect()
    };
    let top = cells(Row::Top);
    let bottom = cells(Row::Bottom);
    let width = top.iter().chain(&bottom).map(|c| c.chars().count()).max().unwrap_or(1) + 1;
    let pad = |row: &[String]| -> String {
        row.iter().map(|c| format!("{c:<width$}")).collect::<String>().trim_end().to_string()
    };
    let pairs = |v: Vec<(usize, usize)>, sep: &str, prime: &str| -> String {
        v.iter().map(|(a, b)| format!("{a}{sep}{b}{prime}")).collect::<Vec<_>>().join(" ")
    };
    let mut out = format!("{}\n{}\n", pad(&top), pad(&bottom));
    let top_arcs = d.top_arcs();
    if !top_arcs.is_empty() {
        out += &format!("top arcs: {}\n", pairs(top_arcs, "–", ""));
    }
    let bottom_arcs: Vec<String> = d.bottom_arcs().iter().map(|(a, b)| format!("{a}′–{b}′")).collect();
    if !bottom_arcs.is_empty() {
        out += &format!("bottom arcs: {}\n", bottom_arcs.join(" "));
    }
    let through = d.through();
    if !through.is_empty() {
        out += &format!("through: {}\n", pairs(through, "→", "′"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn datum_example_rendering() {
        let d = SpinDiagram::from_parts(5, &[2, 5], &[1, 4], &[(1, 3)], &[(2, 5)], &[(4, 3)]).unwrap();
        let text = render_ascii(&d);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "●  ⊙¹ ●  ●  ⊙²");
        assert_eq!(lines[1], "⊙³ ●  ●  ⊙⁴ ●");
        assert_eq!(lines[2], "top arcs: 1–3");
        assert_eq!(lines[3], "bottom arcs: 2′–5′");
        assert_eq!(lines[4], "through: 4→3′");
    }
}
