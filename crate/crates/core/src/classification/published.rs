/// Lexicographic numbers of the permutation-admitting order-4 quasigroups,
/// as printed in the published class list.
pub const PUBLISHED_FRACTAL: [usize; 192] = [
    1, 2, 3, 4, 5, 7, 9, 11, 14, 18, 21, 24, 25, 26, 27, 28, 37, 40, 43, 46, 49, 51, 54, 57, 60,
    63, 70, 71, 77, 80, 82, 83, 92, 93, 100, 101, 110, 111, 113, 116, 121, 126, 127, 132, 133, 138,
    139, 144, 145, 146, 147, 148, 157, 160, 163, 166, 169, 170, 171, 172, 174, 176, 178, 179, 182,
    185, 189, 192, 196, 197, 203, 206, 212, 213, 218, 222, 223, 228, 229, 232, 234, 235, 242, 243,
    246, 252, 253, 259, 262, 263, 269, 272, 274, 275, 284, 285, 292, 293, 302, 303, 305, 308, 314,
    315, 318, 324, 325, 331, 334, 335, 342, 343, 345, 348, 349, 354, 355, 359, 364, 365, 371, 374,
    380, 381, 385, 388, 392, 395, 398, 399, 401, 403, 405, 406, 407, 408, 411, 414, 417, 420, 429,
    430, 431, 432, 433, 438, 439, 444, 445, 450, 451, 456, 461, 464, 466, 467, 476, 477, 484, 485,
    494, 495, 497, 500, 506, 507, 514, 517, 520, 523, 526, 528, 531, 534, 537, 540, 549, 550, 551,
    552, 553, 556, 559, 563, 566, 568, 570, 572, 573, 574, 575, 576,
];

/// Class size stated alongside the list.
pub const PUBLISHED_STATED_COUNT: usize = 192;
