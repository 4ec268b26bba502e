use std::io::{self, Write};

pub const CANVAS_SIZE: usize = 1024;

/// Axis-aligned window `(x_min, x_max, y_min, y_max)`.
pub type BoundingBox = (f64, f64, f64, f64);

pub fn bounding_box(points: impl IntoIterator<Item = (f64, f64)>) -> Option<BoundingBox> {
    points.into_iter().fold(None, |acc, (x, y)| {
        Some(match acc {
            None => (x, x, y, y),
            Some((x0, x1, y0, y1)) => (x0.min(x), x1.max(x), y0.min(y), y1.max(y)),
        })
    })
}

/// Black-on-white bitmap over a bounding box padded by 5% per side.
/// Points map to pixels by truncation; `y` grows upwards.
#[derive(Clone, Debug)]
pub struct Canvas {
    window: BoundingBox,
    pixels: Vec<bool>,
}

impl Canvas {
    pub fn fit(bbox: BoundingBox) -> Self {
        let pad = |lo: f64, hi: f64| {
            let span = hi - lo;
            let p = if span > 0.0 { 0.05 * span } else { 0.5 };
            (lo - p, hi + p)
        };
        let (x0, x1) = pad(bbox.0, bbox.1);
        let (y0, y1) = pad(bbox.2, bbox.3);
        Canvas { window: (x0, x1, y0, y1), pixels: vec![false; CANVAS_SIZE * CANVAS_SIZE] }
    }

    pub fn window(&self) -> BoundingBox {
        self.window
    }

    fn cell(t: f64) -> usize {
        ((t * CANVAS_SIZE as f64).floor().max(0.0) as usize).min(CANVAS_SIZE - 1)
    }

    pub fn plot(&mut self, (x, y): (f64, f64)) {
        let (x0, x1, y0, y1) = self.window;
        let col = Self::cell((x - x0) / (x1 - x0));
        let row = CANVAS_SIZE - 1 - Self::cell((y - y0) / (y1 - y0));
        self.pixels[row * CANVAS_SIZE + col] = true;
    }

    pub fn inked(&self) -> usize {
        self.pixels.iter().filter(|&&p| p).count()
    }

    pub fn write_p6<W: Write>(&self, w: &mut W) -> io::Result<()> {
        write!(w, "P6\n{CANVAS_SIZE} {CANVAS_SIZE}\n255\n")?;
        let body: Vec<u8> = self.pixels.iter().flat_map(|&on| if on { [0u8; 3] } else { [255u8; 3] }).collect();
        w.write_all(&body)
    }
}

pub fn render_ppm(points: &[(f64, f64)]) -> Vec<u8> {
    let mut canvas = Canvas::fit(bounding_box(points.iter().copied()).unwrap_or((0.0, 0.0, 0.0, 0.0)));
    for &p in points {
        canvas.plot(p);
    }
    let mut out = Vec::new();
    canvas.write_p6(&mut out).expect("writing to a Vec cannot fail");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_size() {
        let img = render_ppm(&[(0.0, 0.0), (1.0, 2.0)]);
        let header = b"P6\n1024 1024\n255\n";
        assert_eq!(&img[..header.len()], header);
        assert_eq!(img.len(), header.len() + 3 * CANVAS_SIZE * CANVAS_SIZE);
    }

    #[test]
    fn corners_land_inside_padding() {
        let mut c = Canvas::fit((0.0, 1.0, 0.0, 1.0));
        c.plot((0.0, 0.0));
        c.plot((1.0, 1.0));
        // 0.05 / 1.1 of 1024 is pixel 46; y is flipped
        let lo = (0.05 / 1.1 * 1024.0) as usize;
        let hi = (1.05 / 1.1 * 1024.0) as usize;
        assert!(c.pixels[(1023 - lo) * CANVAS_SIZE + lo]);
        assert!(c.pixels[(1023 - hi) * CANVAS_SIZE + hi]);
        assert_eq!(c.inked(), 2);
    }

    #[test]
    fn single_point_and_empty() {
        let img = render_ppm(&[(3.0, 3.0)]);
        assert_eq!(img.iter().skip(17).filter(|&&b| b == 0).count(), 3);
        let blank = render_ppm(&[]);
        assert!(blank[17..].iter().all(|&b| b == 255));
    }

    #[test]
    fn deterministic() {
        let pts: Vec<(f64, f64)> = (0..1000).map(|i| ((i as f64).sin(), (i as f64 * 0.7).cos())).collect();
        assert_eq!(render_ppm(&pts), render_ppm(&pts));
    }
}
