use std::fmt::Write;

use boxkit::BoxRepresentation;

const SIZE: f64 = 1000.0;
const MARGIN: f64 = 20.0;

/// Renders a 2-dimensional representation as outlined rectangles on a
/// 1000x1000 canvas, first dimension horizontal, second vertical (upwards).
pub fn render(rep: &BoxRepresentation) -> String {
    let bounds = |k: usize| {
        let lo = rep.iter().map(|(_, b)| b[k].left).min().unwrap_or(0);
        let hi = rep.iter().map(|(_, b)| b[k].right).max().unwrap_or(1);
        (lo, (hi - lo).max(1))
    };
    let (x0, xspan) = bounds(0);
    let (y0, yspan) = bounds(1);
    let sx = (SIZE - 2.0 * MARGIN) / xspan as f64;
    let sy = (SIZE - 2.0 * MARGIN) / yspan as f64;
    let px = |x: i64| MARGIN + (x - x0) as f64 * sx;
    let py = |y: i64| SIZE - MARGIN - (y - y0) as f64 * sy;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="1000" height="1000" viewBox="0 0 1000 1000">"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="1000" height="1000" fill="white"/>"#
    );
    for (v, b) in rep.iter() {
        let (left, right) = (px(b[0].left), px(b[0].right));
        let (top, bottom) = (py(b[1].right), py(b[1].left));
        let _ = writeln!(
            out,
            r#"<rect x="{left:.2}" y="{top:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black" stroke-width="2"/>"#,
            right - left,
            bottom - top
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="middle" dominant-baseline="middle">{v}</text>"#,
            (left + right) / 2.0,
            (top + bottom) / 2.0
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use boxkit::Interval;
    use std::collections::BTreeMap;

    fn rep() -> BoxRepresentation {
        let boxes = BTreeMap::from([
            (0, vec![Interval::new(0, 10), Interval::new(0, 10)]),
            (1, vec![Interval::new(5, 20), Interval::new(5, 15)]),
        ]);
        BoxRepresentation::new(2, boxes).unwrap()
    }

    #[test]
    fn corners_map_to_the_margins() {
        let svg = render(&rep());
        // x: 0..20 onto 20..980, 48 px per unit; y: 0..15, 64 px per unit.
        assert!(svg.contains(r#"<rect x="20.00" y="340.00" width="480.00" height="640.00""#));
        assert!(svg.contains(r#"<rect x="260.00" y="20.00" width="720.00" height="640.00""#));
        assert!(svg.contains(r#"<text x="260.00" y="660.00""#));
        assert_eq!(svg.matches("stroke-width=\"2\"").count(), 2);
        assert!(svg.contains(">0</text>") && svg.contains(">1</text>"));
    }

    #[test]
    fn deterministic() {
        assert_eq!(render(&rep()), render(&rep()));
    }
}
