use crate::error::{Error, Result};
use crate::quasigroup::{Quasigroup, Symbol};
use crate::transform::{e_in_place, QString};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum PixmapFormat {
    /// `P6`.
    #[default]
    Binary,
    /// `P3`, one image row per text line.
    Text,
}

/// Gray level of `symbol`: evenly spaced from white (0) to black (s-1).
pub fn gray_level(order: usize, symbol: Symbol) -> u8 {
    if order <= 1 {
        return 255;
    }
    let k = symbol as usize;
    (255 - (255 * k + (order - 1) / 2) / (order - 1)) as u8
}

/// Draws the periodic string built from `motif` and its first `iterations`
/// e-transforms under `leader`, one row each, as a pixmap.
pub fn render_iterations(
    q: &Quasigroup,
    leader: Symbol,
    motif: &QString,
    width: usize,
    iterations: usize,
    format: PixmapFormat,
) -> Result<Vec<u8>> {
    let s = q.order();
    if motif.order() != s {
        return Err(Error::OrderMismatch {
            quasigroup: s,
            string: motif.order(),
        });
    }
    if leader as usize >= s {
        return Err(Error::SymbolOutOfRange {
            symbol: leader as usize,
            order: s,
        });
    }
    if motif.is_empty() {
        return Err(Error::EmptyString);
    }
    if width == 0 || !width.is_multiple_of(motif.len()) {
        return Err(Error::InvalidParameter(format!(
            "width {width} is not a positive multiple of the motif length {}",
            motif.len()
        )));
    }
    let palette: Vec<u8> = (0..s).map(|v| gray_level(s, v as Symbol)).collect();
    let height = iterations + 1;
    let magic = match format {
        PixmapFormat::Binary => "P6",
        PixmapFormat::Text => "P3",
    };
    let mut out = format!("{magic}\n{width} {height}\n255\n").into_bytes();
    let mut row: Vec<Symbol> = motif
        .symbols()
        .iter()
        .copied()
        .cycle()
        .take(width)
        .collect();
    for k in 0..height {
        if k > 0 {
            e_in_place(q, leader, &mut row);
        }
        match format {
            PixmapFormat::Binary => {
                for &v in &row {
                    let g = palette[v as usize];
                    out.extend_from_slice(&[g, g, g]);
                }
            }
            PixmapFormat::Text => {
                let line: Vec<String> = row
                    .iter()
                    .map(|&v| {
                        let g = palette[v as usize];
                        format!("{g} {g} {g}")
                    })
                    .collect();
                out.extend_from_slice(line.join(" ").as_bytes());
                out.push(b'\n');
            }
        }
    }
    Ok(out)
}

fn header_token<'a>(bytes: &'a [u8], pos: &mut usize) -> Result<&'a [u8]> {
    loop {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if *pos < bytes.len() && bytes[*pos] == b'#' {
            while *pos < bytes.len() && bytes[*pos] != b'\n' {
                *pos += 1;
            }
            continue;
        }
        break;
    }
    let start = *pos;
    while *pos < bytes.len() && !bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
    if start == *pos {
        return Err(Error::syntax(0, "truncated pixmap header"));
    }
    Ok(&bytes[start..*pos])
}

fn header_number(bytes: &[u8], pos: &mut usize) -> Result<usize> {
    let t = header_token(bytes, pos)?;
    std::str::from_utf8(t)
        .ok()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::syntax(0, "invalid number in pixmap"))
}

/// Reads a gray pixmap produced by [`render_iterations`] back into symbol
/// rows using the inverse palette.
pub fn decode_pixmap(bytes: &[u8], order: usize) -> Result<Vec<Vec<Symbol>>> {
    let mut pos = 0;
    let magic = header_token(bytes, &mut pos)?;
    let binary = match magic {
        b"P6" => true,
        b"P3" => false,
        _ => return Err(Error::syntax(0, "not a P3 or P6 pixmap")),
    };
    let width = header_number(bytes, &mut pos)?;
    let height = header_number(bytes, &mut pos)?;
    if header_number(bytes, &mut pos)? != 255 {
        return Err(Error::syntax(0, "maxval must be 255"));
    }
    let mut inverse = [None; 256];
    for v in 0..order {
        inverse[gray_level(order, v as Symbol) as usize] = Some(v as Symbol);
    }
    let samples: Vec<u8> = if binary {
        // exactly one whitespace byte separates the header from the raster
        let start = pos + 1;
        bytes.get(start..).unwrap_or_default().to_vec()
    } else {
        let mut v = Vec::with_capacity(width * height * 3);
        while v.len() < width * height * 3 {
            let n = header_number(bytes, &mut pos)?;
            v.push(u8::try_from(n).map_err(|_| Error::syntax(0, "sample above maxval"))?);
        }
        v
    };
    if samples.len() != width * height * 3 {
        return Err(Error::syntax(0, "raster size does not match header"));
    }
    samples
        .chunks(width * 3)
        .map(|row| {
            row.chunks(3)
                .map(
                    |px| match (px[0] == px[1] && px[1] == px[2], inverse[px[0] as usize]) {
                        (true, Some(v)) => Ok(v),
                        _ => Err(Error::syntax(0, "pixel outside the palette")),
                    },
                )
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latin::order4_by_index;
    use crate::quasigroup::fixtures::q355;
    use crate::transform::e_transform;

    fn motif() -> QString {
        QString::new(4, vec![0, 1, 2, 3]).unwrap()
    }

    #[test]
    fn palette() {
        let levels: Vec<u8> = (0..4).map(|v| gray_level(4, v)).collect();
        assert_eq!(levels, vec![255, 170, 85, 0]);
        assert_eq!(gray_level(1, 0), 255);
        assert_eq!((gray_level(2, 0), gray_level(2, 1)), (255, 0));
        let mut all: Vec<u8> = (0..=255).map(|v| gray_level(256, v)).collect();
        all.dedup();
        assert_eq!(all.len(), 256);
    }

    #[test]
    fn zero_iterations_is_the_motif() {
        let img = render_iterations(&q355(), 0, &motif(), 8, 0, PixmapFormat::Binary).unwrap();
        let header = b"P6\n8 1\n255\n";
        assert_eq!(&img[..header.len()], header);
        assert_eq!(img.len(), header.len() + 24);
        assert_eq!(
            decode_pixmap(&img, 4).unwrap(),
            vec![vec![0, 1, 2, 3, 0, 1, 2, 3]]
        );
    }

    #[test]
    fn rows_follow_the_transform() {
        let q = order4_by_index(46).unwrap();
        for format in [PixmapFormat::Binary, PixmapFormat::Text] {
            let img = render_iterations(q, 0, &motif(), 40, 12, format).unwrap();
            let rows = decode_pixmap(&img, 4).unwrap();
            assert_eq!(rows.len(), 13);
            for w in rows.windows(2) {
                let prev = QString::new(4, w[0].clone()).unwrap();
                assert_eq!(e_transform(q, 0, &prev).unwrap().symbols(), &w[1][..]);
            }
        }
    }

    #[test]
    fn text_and_binary_agree() {
        let q = order4_by_index(47).unwrap();
        let a = render_iterations(q, 2, &motif(), 12, 5, PixmapFormat::Binary).unwrap();
        let b = render_iterations(q, 2, &motif(), 12, 5, PixmapFormat::Text).unwrap();
        assert!(b.starts_with(b"P3\n12 6\n255\n"));
        assert_eq!(decode_pixmap(&a, 4).unwrap(), decode_pixmap(&b, 4).unwrap());
    }

    #[test]
    fn errors() {
        let q = q355();
        assert!(render_iterations(&q, 0, &motif(), 6, 1, PixmapFormat::Binary).is_err());
        assert!(render_iterations(&q, 9, &motif(), 8, 1, PixmapFormat::Binary).is_err());
        assert!(decode_pixmap(b"P5\n1 1\n255\n\0", 4).is_err());
        assert!(decode_pixmap(b"P6\n2 1\n255\n\xff\xff\xff", 4).is_err());
        assert!(decode_pixmap(b"P6\n1 1\n255\n\x01\x01\x01", 4).is_err());
    }
}
