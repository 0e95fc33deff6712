// Fixed report style. Nothing here may depend on the clock, the
// environment, or randomness: figure bytes must be a pure function
// of the input files.

export const WIDTH = 640;
export const HEIGHT = 400;

export const MARGIN = { top: 36, right: 24, bottom: 48, left: 64 };

export const PALETTE = [
  "#3b6bb5",
  "#c8622d",
  "#3d8f5f",
  "#a1473f",
  "#7b5ea7",
  "#87682c",
];

export const STATUS_COLORS = {
  pass: "#3d8f5f",
  fail: "#c0392b",
  open: "#b0b0b0",
};

export const FONT_FAMILY = "Helvetica, Arial, sans-serif";
export const FONT_SIZE = 12;
export const TITLE_SIZE = 14;

export const AXIS_COLOR = "#333333";
export const GRID_COLOR = "#dddddd";
export const ANNOTATION_COLOR = "#555555";
