//! Static SVG rendering of a word: nails as black dots on a top row, the
//! wire as one continuous path along a baseline that loops around the
//! letter's nail once per letter, left to right. Positive letters loop
//! clockwise (sweep flag 1), inverses counterclockwise.
//!
//! The drawing is faithful to the homotopy class — the loop sequence — not a
//! physical embedding, so wire crossings are deliberate and harmless.

use hangnail_core::word::{Sign, Word};
use std::fmt::Write as _;

const NAIL_Y: i64 = 48;
const BASE_Y: i64 = 120;
const LOOP_R: i64 = 14;
const MARGIN: i64 = 30;

fn nail_x(i: u32) -> i64 {
    MARGIN + 30 + (i as i64 - 1) * 60
}

fn lane_x(j: usize) -> i64 {
    MARGIN + 10 + j as i64 * 28
}

pub fn render_svg(word: &Word) -> String {
    let rank = word.rank();
    let len = word.len();
    let width = (nail_x(rank.max(1)) + 60).max(lane_x(len) + 60);
    let height = BASE_Y + 40;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(
        svg,
        "  <title>picture-hanging word: rank {rank}, {len} letters</title>"
    );

    for i in 1..=rank {
        let x = nail_x(i);
        let _ = writeln!(svg, "  <circle cx=\"{x}\" cy=\"{NAIL_Y}\" r=\"5\" fill=\"black\"/>");
        let _ = writeln!(
            svg,
            "  <text x=\"{x}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">x{i}</text>",
            NAIL_Y - 14
        );
    }

    // the wire: baseline with one loop per letter
    let mut d = format!("M {} {BASE_Y}", MARGIN - 10);
    for (j, letter) in word.letters().enumerate() {
        let lx = lane_x(j);
        let cx = nail_x(letter.generator().index());
        let sweep = match letter.sign() {
            Sign::Pos => 1, // clockwise around the nail
            Sign::Neg => 0,
        };
        let bottom = NAIL_Y + LOOP_R;
        let top = NAIL_Y - LOOP_R;
        let _ = write!(
            d,
            " L {lx} {BASE_Y} L {cx} {bottom} A {LOOP_R} {LOOP_R} 0 0 {sweep} {cx} {top} A {LOOP_R} {LOOP_R} 0 0 {sweep} {cx} {bottom} L {} {BASE_Y}",
            lx + 14
        );
    }
    let _ = write!(d, " L {} {BASE_Y}", width - MARGIN + 10);
    let _ = writeln!(
        svg,
        "  <path d=\"{d}\" fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"2\"/>"
    );
    svg.push_str("</svg>\n");
    svg
}
