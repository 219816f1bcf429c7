use crate::error::{Error, Result};
use crate::placement::{GridDims, Netlist, Placement, Slot};

pub const DUMMY_GLYPH: char = '·';
pub const EMPTY_GLYPH: char = ' ';

const FALLBACK: &str = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";

/// One character per device: the device names when they are all single
/// distinct characters, otherwise letters by device index.
pub fn device_glyphs(nl: &Netlist) -> Vec<char> {
    let names: Vec<char> = nl
        .devices()
        .iter()
        .filter_map(|d| {
            let mut it = d.name.chars();
            match (it.next(), it.next()) {
                (Some(c), None) if !matches!(c, DUMMY_GLYPH | EMPTY_GLYPH | '.' | '_') => Some(c),
                _ => None,
            }
        })
        .collect();
    if names.len() == nl.devices().len() {
        names
    } else {
        index_glyphs(nl.devices().len())
    }
}

fn index_glyphs(n: usize) -> Vec<char> {
    (0..n).map(|i| FALLBACK.chars().nth(i).unwrap_or('?')).collect()
}

fn render_slots(p: &Placement, glyphs: &[char]) -> String {
    let dims = p.dims();
    let cols = dims.n_cols as usize;
    let slots = p.slots();
    slots
        .chunks(cols)
        .map(|row| {
            row.iter()
                .map(|s| match s {
                    Slot::Device(d) => glyphs.get(d.index()).copied().unwrap_or('?'),
                    Slot::Dummy => DUMMY_GLYPH,
                    Slot::Empty => EMPTY_GLYPH,
                })
                .map(String::from)
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// Grid text with devices lettered by index, row 1 first.
pub fn render_placement(p: &Placement) -> String {
    let devices = p
        .slots()
        .into_iter()
        .filter_map(|s| match s {
            Slot::Device(d) => Some(d.index() + 1),
            _ => None,
        })
        .max();
    render_slots(p, &index_glyphs(devices.unwrap_or(0)))
}

/// Grid text using [`device_glyphs`].
pub fn render_with_netlist(p: &Placement, nl: &Netlist) -> String {
    render_slots(p, &device_glyphs(nl))
}

/// Inverse of [`render_with_netlist`].
pub fn parse_rendered(text: &str, nl: &Netlist) -> Result<Placement> {
    let glyphs = device_glyphs(nl);
    let lines: Vec<&str> = text.split('\n').collect();
    let width = lines[0].chars().count();
    if width.is_multiple_of(2) {
        return Err(Error::Placement("row 1: expected cells separated by single spaces".into()));
    }
    let cols = width.div_ceil(2);
    let dims = GridDims::new(lines.len() as u32, cols as u32)?;
    let mut slots = Vec::with_capacity(dims.cells());
    for (r, line) in lines.iter().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        if chars.len() != width {
            return Err(Error::Placement(format!(
                "row {}: {} characters, expected {width}",
                r + 1,
                chars.len()
            )));
        }
        for (k, &c) in chars.iter().enumerate() {
            if k % 2 == 1 {
                if c != ' ' {
                    return Err(Error::Placement(format!("row {}: bad separator '{c}'", r + 1)));
                }
                continue;
            }
            slots.push(match c {
                DUMMY_GLYPH => Slot::Dummy,
                EMPTY_GLYPH => Slot::Empty,
                c => match glyphs.iter().position(|g| *g == c) {
                    Some(i) => Slot::Device(nl.device_ids().nth(i).expect("glyph per device")),
                    None => {
                        return Err(Error::Placement(format!("row {}: unknown device '{c}'", r + 1)))
                    }
                },
            });
        }
    }
    let p = Placement::from_slots(dims, &slots)?;
    p.validate(nl)?;
    Ok(p)
}
