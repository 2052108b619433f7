#include "lsflow/benchmarks.hpp"

#include <cmath>

// Closed-form reference flow on the axisymmetric family of surfaces
// r(z) = r0 + sin(1 + 3 z) / 5: a tangential, surface-divergence-free
// velocity whose in-plane viscous force is balanced by a pressure that only
// varies along the meridian.  The derivative expressions below are
// common-subexpression-reduced output of a computer-algebra derivation.

namespace lsflow {

using std::cos;
using std::pow;
using std::sin;
using std::sqrt;

Vec3 axisym_exact_velocity(const Vec3& X) {
  const double x = X[0], y = X[1], z = X[2];
  const double rho = sqrt(x * x + y * y);
  const double s = 0.6 * cos(1.0 + 3.0 * z);
  const double c0 = rho + 0.2 * (sin(1.0) - sin(1.0 + 3.0 * z));
  const double fac = c0 / (rho * sqrt(1.0 + s * s));
  return {fac * s * x / rho, fac * s * y / rho, fac};
}

Mat3 axisym_exact_velocity_gradient(const Vec3& X) {
  const double x = X[0], y = X[1], z = X[2];
  Mat3 g;
  const double x0 = pow(x, 2);
  const double x1 = pow(y, 2);
  const double x2 = x0 + x1;
  const double x3 = 5*pow(x2, 3);
  const double x4 = pow(x2, 7.0/2.0);
  const double x5 = sin(1);
  const double x6 = 3*z + 1;
  const double x7 = sin(x6);
  const double x8 = sqrt(x2);
  const double x9 = x5 - x7 + 5*x8;
  const double x10 = x4*x9;
  const double x11 = 2*x9;
  const double x12 = x11*pow(x2, 5.0/2.0);
  const double x13 = cos(x6);
  const double x14 = pow(x13, 2);
  const double x15 = 9*x14;
  const double x16 = x15 + 25;
  const double x17 = pow(x16, -1.0/2.0);
  const double x18 = (3.0/5.0)*x13;
  const double x19 = x17*x18/pow(x2, 9.0/2.0);
  const double x20 = pow(x2, 3.0/2.0);
  const double x21 = x*x17;
  const double x22 = -x18*x21*y*(x11*x20 - 5*pow(x2, 2))/x4;
  const double x23 = pow(x16, -3.0/2.0);
  const double x24 = x7*x9;
  const double x25 = (9.0/5.0)*x23*(-x15*x24 + x16*(x14 + x24))/x2;
  const double x26 = (-x5 + x7)/x20;
  g(0,0) = x19*(-x0*x12 + x0*x3 + x10);
  g(0,1) = x22;
  g(0,2) = -x*x25;
  g(1,0) = x22;
  g(1,1) = x19*(-x1*x12 + x1*x3 + x10);
  g(1,2) = -x25*y;
  g(2,0) = x21*x26;
  g(2,1) = x17*x26*y;
  g(2,2) = 3*x13*x23*(9*x5*x7 + 45*x7*x8 - 34)/x8;

  return g;
}

Vec3 axisym_momentum_source(const Vec3& X, double mu) {
  const double x = X[0], y = X[1], z = X[2];
  Vec3 gam;
  const double x0 = pow(x, 2);
  const double x1 = pow(y, 2);
  const double x2 = x0 + x1;
  const double x3 = sqrt(x2);
  const double x4 = 1.0/x3;
  const double x5 = 3*z + 1;
  const double x6 = cos(x5);
  const double x7 = pow(x6, 2);
  const double x8 = 9*x7;
  const double x9 = 1.0/x2;
  const double x10 = x0*x9;
  const double x11 = 25*x10;
  const double x12 = x1*x9;
  const double x13 = 25*x12;
  const double x14 = x11 + x13 + x8;
  const double x15 = 1.0/x14;
  const double x16 = x11*x15;
  const double x17 = x16 - 1;
  const double x18 = -x17;
  const double x19 = pow(x2, -3.0/2.0);
  const double x20 = sin(x5);
  const double x21 = -x20 + 5*x3 + sin(1);
  const double x22 = pow(x2, -2);
  const double x23 = x21*x22;
  const double x24 = 2*x23;
  const double x25 = -5*x19 + x24;
  const double x26 = -x25;
  const double x27 = x15*x4;
  const double x28 = x20*x27;
  const double x29 = 56250*x28;
  const double x30 = x26*x29;
  const double x31 = pow(x14, -2);
  const double x32 = x31*x7;
  const double x33 = x20*x32;
  const double x34 = x26*x33;
  const double x35 = 1012500*x4;
  const double x36 = x34*x35;
  const double x37 = 125*x19;
  const double x38 = x20*x37;
  const double x39 = x22*x7;
  const double x40 = 50*x39;
  const double x41 = x20*x23;
  const double x42 = 50*x41;
  const double x43 = x19*x20;
  const double x44 = (9.0/25.0)*x7 + 1;
  const double x45 = 1.0/x44;
  const double x46 = x45*x7;
  const double x47 = x43*x46;
  const double x48 = 45*x47;
  const double x49 = x21*x45;
  const double x50 = x20*x39*x49;
  const double x51 = 18*x50;
  const double x52 = x7*x9;
  const double x53 = x21*x9;
  const double x54 = x20*x53;
  const double x55 = x45*x54*x8 - 25*x52 - 25*x54;
  const double x56 = -x0*x38 + x0*x40 + x0*x42 + x0*x48 - x0*x51 + x55;
  const double x57 = 2250*x27;
  const double x58 = 5*x19;
  const double x59 = -x0*x24 + x0*x58 + x53;
  const double x60 = -x38 + x40 + x42 + x48 - x51;
  const double x61 = x57*x60;
  const double x62 = x59*x7;
  const double x63 = x20*x31;
  const double x64 = 1012500*x4*x63;
  const double x65 = x1*x61 - x29*x59 + x56*x57 + x62*x64;
  const double x66 = x15*x8;
  const double x67 = 1 - x66;
  const double x68 = x20*x9;
  const double x69 = x45*x68;
  const double x70 = 1125*x43;
  const double x71 = pow(x20, 2);
  const double x72 = x45*x71;
  const double x73 = x7*x71/pow(x44, 2);
  const double x74 = 3125*x19 + 2025*x46*x53 - x49*x70 - 6075*x53*x72 + 2187*x53*x73 - 5625*x53 + 16875*x68 - 4050*x69*x7 + 5625*x69;
  const double x75 = x67*x74;
  const double x76 = 225*x52;
  const double x77 = x21*x37;
  const double x78 = 225*x54;
  const double x79 = -81*x20*x21*x45*x7*x9 + x76 + x77 + x78 - 625*x9;
  const double x80 = -x79;
  const double x81 = x67*x80;
  const double x82 = 450*x20;
  const double x83 = x15*x82;
  const double x84 = x75 + x81*x83;
  const double x85 = -x1*x30 + x1*x36 + x65 + x84;
  const double x86 = -x1*x38 + x1*x40 + x1*x42 + x1*x48 - x1*x51 + x55;
  const double x87 = -x1*x24 + x1*x58 + x53;
  const double x88 = x7*x87;
  const double x89 = x0*x61 - x29*x87 + x57*x86 + x64*x88;
  const double x90 = -x0*x30 + x0*x36 + x84 + x89;
  const double x91 = x13*x15;
  const double x92 = 25*x15;
  const double x93 = x20*x92;
  const double x94 = x0*x93;
  const double x95 = x1*x93;
  const double x96 = x32*x82;
  const double x97 = x0*x96;
  const double x98 = -9*x20*x21*x45 + 25;
  const double x99 = -x98;
  const double x100 = x15*x99;
  const double x101 = 900*x20*x67*x7;
  const double x102 = 225*x21;
  const double x103 = x102*x46 - x102*x72 + 625*x20 + 243*x21*x73 - x46*x82;
  const double x104 = 2*x67;
  const double x105 = x0*x15;
  const double x106 = x7*x74;
  const double x107 = x1*x15;
  const double x108 = x103*x104 + x105*x106 + x106*x107;
  const double x109 = x15*x9;
  const double x110 = x15*x80;
  const double x111 = x68*(x0*x110 + x1*x110 + x104*x99);
  const double x112 = x27*x7;
  const double x113 = 2250*x112;
  const double x114 = x1*x113;
  const double x115 = x113*x59;
  const double x116 = 11250*x63;
  const double x117 = x0*x113;
  const double x118 = x113*x87;
  const double x119 = x10*x116*(x114*x26 + x115 + x81) - 225*x109*(x1*x80*x96 + x100*x101 + x108 - x80*x94 - x80*x95 + x80*x97) + 5625*x111*x15 - 101250*x111*x32 + x116*x12*(x117*x26 + x118 + x81);
  const double x120 = x4*x66;
  const double x121 = x0*x120;
  const double x122 = x91 - 1;
  const double x123 = -x122;
  const double x124 = x1*x120;
  const double x125 = x67*x79;
  const double x126 = -x114*x25 - x125 + 2250*x15*x4*x59*x7;
  const double x127 = -x117*x25 - x125 + 2250*x15*x4*x7*x87;
  const double x128 = x1*x127;
  const double x129 = x15*x79;
  const double x130 = x0*x129;
  const double x131 = x1*x129;
  const double x132 = x104*x98 + x130 + x131;
  const double x133 = x25*x29;
  const double x134 = x1*x25;
  const double x135 = x33*x35;
  const double x136 = -x125*x83 + x75;
  const double x137 = x105*x7;
  const double x138 = x0*x25;
  const double x139 = x107*x7;
  const double x140 = x0*x79;
  const double x141 = x15*x98;
  const double x142 = x1*x79;
  const double x143 = 1875*x22;
  const double x144 = pow(x2, -5.0/2.0);
  const double x145 = x144*x21;
  const double x146 = 375*x145;
  const double x147 = 450*x39;
  const double x148 = x23*x82;
  const double x149 = 405*x47;
  const double x150 = 162*x50;
  const double x151 = 81*x46*x54 - x76 - x77 - x78 + 625*x9;
  const double x152 = -x0*x143 + x0*x146 + x0*x147 + x0*x148 + x0*x149 - x0*x150 - x0*x70 + x151;
  const double x153 = x10 + x12 - 1;
  const double x154 = x153*x31;
  const double x155 = 50*x154*x19;
  const double x156 = x140*x155;
  const double x157 = x130*x19 - x156;
  const double x158 = x131*x19;
  const double x159 = 125*x145 - 625*x22 + 150*x39 + 150*x41 - 375*x43 + 135*x47 - 54*x50;
  const double x160 = 3*x27;
  const double x161 = x159*x160;
  const double x162 = x142*x155;
  const double x163 = -x162;
  const double x164 = x1*x161 + x158 + x163;
  const double x165 = 25*x19 - 9*x43*x49 + 45*x69;
  const double x166 = x27*x79;
  const double x167 = x153*x19;
  const double x168 = x167*x32;
  const double x169 = x104*x165 - x166 + 900*x168*x98;
  const double x170 = x152*x27 + x157 + x164 + x169;
  const double x171 = x137*x19;
  const double x172 = 2250*x171;
  const double x173 = 25*x144;
  const double x174 = 8*x21/pow(x2, 3);
  const double x175 = -x0*x173 + x0*x174;
  const double x176 = 15*x19 - 6*x23;
  const double x177 = x175 + x176;
  const double x178 = -x24 + x58;
  const double x179 = x175 + x178;
  const double x180 = 450*x153*x32;
  const double x181 = x10*x180;
  const double x182 = x154*x19;
  const double x183 = x182*x62;
  const double x184 = 112500*x0;
  const double x185 = -x134*x168*x184 + x134*x172;
  const double x186 = x114*x179 + x115 + x117*x177 + x152*x67 - x172*x59 + x181*x79 + x183*x184 + x185;
  const double x187 = x15*x19;
  const double x188 = 750*x187;
  const double x189 = 750*x25;
  const double x190 = x31*x88;
  const double x191 = 37500*x167;
  const double x192 = x191*x32;
  const double x193 = 750*x112;
  const double x194 = -x1*x173 + x1*x174;
  const double x195 = x178 + x194;
  const double x196 = 150*x154*x52*x79 + x159*x67 + x179*x193 + x193*x195 - x193*x25;
  const double x197 = -x138*x192 + x171*x189 - x188*x88 + x190*x191 + x196;
  const double x198 = x105*x19;
  const double x199 = x107*x19;
  const double x200 = x0*x126*x155 - x126*x198 - x127*x199 + x128*x155 + 450*x132*x168;
  const double x201 = -x1*x143 + x1*x146 + x1*x147 + x1*x148 + x1*x149 - x1*x150 - x1*x70 + x151;
  const double x202 = x0*x161 + x157;
  const double x203 = x158 + x163 + x169 + x201*x27 + x202;
  const double x204 = x139*x19;
  const double x205 = x176 + x194;
  const double x206 = x12*x180;
  const double x207 = 112500*x1*x167*x190 + x114*x205 + x117*x195 + x118 + x185 + x201*x67 - 2250*x204*x87 + x206*x79;
  const double x208 = -x134*x192 + 37500*x183 - x188*x62 + x189*x204 + x196;
  const double x209 = 3*x17;
  const double x210 = x9*x92;
  const double x211 = -x153*x92 + 1;
  const double x212 = x154*x22;
  const double x213 = x1*x212;
  const double x214 = 1250*x213;
  const double x215 = x154*x39;
  const double x216 = 11250*x132*x215;
  const double x217 = -225*x132*x15*x22*x7 + x216;
  const double x218 = x10*x107;
  const double x219 = 125*x218;
  const double x220 = 3*x122;
  const double x221 = x0*x212;
  const double x222 = 1250*x221;
  const double x223 = x126*x222;
  const double x224 = x132*x15*x76;
  const double x225 = -x10 + x153*x16 + 1;
  const double x226 = 50*x10*x15*x225;
  const double x227 = 75*x218;
  const double x228 = -x12 + x153*x91 + 1;
  const double x229 = 50*x12*x15*x228;
  const double x230 = -1125*x0*x15*x4*x7*(x1*x160*x197 + x126*x27 + x170*x67 + x186*x27 + x200) - 1125*x1*x15*x4*x7*(x0*x160*x208 + x127*x27 + x200 + x203*x67 + x207*x27) + x121*(x119 - x18*x85 + x90*x91) + 5*x122*(50*x0*x1*x126*x15*x22 + 225*x1*x132*x15*x22*x7 + 225*x1*x15*x203*x4*x7 - x1*x216 - x1*x223 - x122*x207 - x126*x16 - x127*x229 - x208*x227 - x224) + x124*(x119 - x123*x90 + x16*x85) + 5*x17*(50*x0*x1*x127*x15*x22 + 225*x0*x132*x15*x22*x7 + 225*x0*x15*x170*x4*x7 - x0*x216 - x126*x226 - x127*x91 - x128*x222 - x17*x186 - x197*x227 - x224) + x219*(50*x0*x126*x15*x22 + 50*x1*x127*x15*x211*x22 - x126*x210 + 225*x15*x170*x4*x7 - x186*x210 - x197*x220 - x217 - x223) + x219*(50*x0*x126*x15*x211*x22 + 50*x1*x127*x15*x22 - x127*x210 - x127*x214 + 225*x15*x203*x4*x7 - x207*x210 - x208*x209 - x217) - 9*x4*x67*(-x126*x94 + x126*x97 - x127*x95 + x128*x96 - x132*x67*x7*x83 + x137*(x1*x133 - x134*x135 + x136 + x65) + x139*(x0*x133 - x135*x138 + x136 + x89) + x67*(-x101*x141 + x108 + x140*x93 - x140*x96 - x142*x96 + x79*x95));
  const double x231 = 25*x15*x230*x4;
  const double x232 = 10*x123;
  const double x233 = 250*x109;
  const double x234 = x233*x59;
  const double x235 = x27*x80;
  const double x236 = 11250*x33;
  const double x237 = x10*x236;
  const double x238 = x237*(x232*x26 - x234 + x235);
  const double x239 = 250*x218;
  const double x240 = -x239*x26;
  const double x241 = x1*x235;
  const double x242 = x232*x87 + x240 + x241;
  const double x243 = 11250*x68;
  const double x244 = x243*x32;
  const double x245 = 450*x52;
  const double x246 = x100*x245;
  const double x247 = -x11*x110 + x123*x80 + x246;
  const double x248 = 25*x20*x27;
  const double x249 = x247*x248;
  const double x250 = x4*x96;
  const double x251 = x247*x250;
  const double x252 = 112500*x68;
  const double x253 = 112500*x12;
  const double x254 = x112*x74;
  const double x255 = 25*x20;
  const double x256 = x250*x80;
  const double x257 = x235*x255 - x254 - x256;
  const double x258 = -x232*x60 + x233*x56 + x252*x31*x62 + x253*x34 + x257;
  const double x259 = -x258;
  const double x260 = x116*x80;
  const double x261 = x10*x260 + x100*x243 - 450*x103*x109 + x12*x260 - 202500*x32*x68*x99;
  const double x262 = -x123*x74 + x16*x74 + x261;
  const double x263 = -x112*x262;
  const double x264 = 112500*x10;
  const double x265 = x264*x34;
  const double x266 = x1*x265 + x239*x60;
  const double x267 = -x1*x254 - x1*x256 - x232*x86 + x241*x255 + x253*x63*x88 + x266;
  const double x268 = -x267;
  const double x269 = 225*x27;
  const double x270 = x0*x269;
  const double x271 = x12*x236;
  const double x272 = x1*x16;
  const double x273 = 5625*x28;
  const double x274 = x166 + x234;
  const double x275 = 10*x122*x25 - x274;
  const double x276 = x0*x275;
  const double x277 = -250*x0*x1*x15*x25*x9;
  const double x278 = 10*x122;
  const double x279 = -x1*x166 - x277 - x278*x87;
  const double x280 = x141*x245;
  const double x281 = -x280;
  const double x282 = x11*x129 + x122*x79 + x281;
  const double x283 = x269*x7;
  const double x284 = 225*x19;
  const double x285 = x137*x284;
  const double x286 = 225*x187;
  const double x287 = x279*x7;
  const double x288 = 11250*x168;
  const double x289 = x276*x288;
  const double x290 = 11250*x182;
  const double x291 = x287*x290;
  const double x292 = x154*x245;
  const double x293 = x195*x278;
  const double x294 = 250*x15;
  const double x295 = x12*x294;
  const double x296 = x179*x295;
  const double x297 = 500*x87;
  const double x298 = x105*x22;
  const double x299 = 500*x1*x25*x298;
  const double x300 = 12500*x134*x221 - x299;
  const double x301 = x107*x211*x22*x297 + x164 + x25*x295 - x293 - x296 + x300;
  const double x302 = x211*x299;
  const double x303 = x10*x294;
  const double x304 = 12500*x59;
  const double x305 = -x0*x15*x19*x79 + x156;
  const double x306 = -x15*x152*x4 + x305;
  const double x307 = 500*x0*x15*x22*x59 - x177*x303 - x179*x278 - x221*x304 - x234 - x302 - x306;
  const double x308 = 50*x22;
  const double x309 = x130*x308;
  const double x310 = x131*x308;
  const double x311 = 22500*x215*x98;
  const double x312 = -450*x15*x165*x4*x7 - 450*x15*x22*x7*x98 - 25*x15*x79*x9 + x311;
  const double x313 = 1250*x0*x153*x22*x31*x79 - x152*x210 - x159*x220 - x211*x310 - x309 - x312;
  const double x314 = -50*x1*x153*x19*x282*x31 + x199*x282;
  const double x315 = x1*x275;
  const double x316 = -50*x0*x1*x15*x22*x275 + x222*x315;
  const double x317 = 3125*x15;
  const double x318 = x10*x317;
  const double x319 = x139*x284;
  const double x320 = -x1*x15*x19*x79 + x162;
  const double x321 = 3*x1*x15*x159*x4 + 500*x1*x15*x22*x59 + 500*x1*x15*x228*x25*x9 - x213*x304 - x274 - x293 - x296 - x320;
  const double x322 = x0*x283;
  const double x323 = x195*x303;
  const double x324 = x109*x228;
  const double x325 = -x15*x201*x4 + x320;
  const double x326 = -12500*x0*x1*x153*x22*x25*x31 + x166 + x299;
  const double x327 = 250*x0*x15*x25*x9 - x205*x278 - x297*x324 - x323 - x325 - x326;
  const double x328 = x1*x269;
  const double x329 = x328*x7;
  const double x330 = -1250*x0*x1*x153*x22*x31*x79 + x1*x309 + x159*x227 + x280;
  const double x331 = 25*x0*x15*x79*x9 + 450*x1*x15*x165*x4*x7 + 450*x1*x15*x22*x7*x98 + 50*x1*x15*x228*x79*x9 - x1*x311 - x122*x201 - x330;
  const double x332 = x210*x279;
  const double x333 = -x15*x282*x4;
  const double x334 = 125*x17;
  const double x335 = -x15*x331*x4 + x314;
  const double x336 = 125*x122;
  const double x337 = -125*x0*x15*x4*(x275*x283 - x275*x285 - x282*x292 + x283*x301 + x283*x307 - x286*x287 + x289 + x291 + x313*x67) - 125*x15*x4*(x1*x289 + x1*x291 - x206*x282 + x279*x283 - x279*x319 - x285*x315 + x321*x322 + x327*x329 + x331*x67) + x269*(x1*x238 + x1*x249 - x1*x251 - x1*x263 - x123*x268 + x242*x271 + x259*x272) + x270*(-x18*x259 + x210*x268 + x238 + x242*x244 + x249 - x251 - x263) + x318*(50*x1*x15*x211*x22*x279 + x1*x15*x313*x4 - x122*x301 - x275*x91 - x307*x91 - x314 - x316) + x318*(50*x0*x1*x15*x211*x22*x275 + 50*x1*x15*x22*x279 - x17*x321 - x214*x279 - x327*x91 - x332 - x335) + x334*(50*x0*x15*x22*x279 + x0*x15*x313*x4 + 50*x0*x153*x19*x282*x31 - x16*x301 - x17*x307 - x198*x282 - x222*x279 - x226*x275 - x332 - x333) + x336*(-x122*x327 - x16*x275 - x16*x321 - 50*x279*x324 - x316 - x333 - x335) - x67*(101250*x0*x20*x275*x31*x4*x7 + 450*x15*x20*x282*x67 + 101250*x20*x279*x31*x4*x7 - x258*x270 - x262*x67 - x267*x269 - x273*x276 - x273*x279);
  const double x338 = -x337;
  const double x339 = 10*x18;
  const double x340 = x233*x87;
  const double x341 = x235 + x26*x339 - x340;
  const double x342 = x0*x235;
  const double x343 = x240 + x339*x59 + x342;
  const double x344 = -x110*x13 + x18*x80 + x246;
  const double x345 = x248*x344;
  const double x346 = x250*x344;
  const double x347 = x190*x252 + x233*x86 + x257 + x265 - x339*x60;
  const double x348 = -x347;
  const double x349 = -x18*x74 + x261 + x74*x91;
  const double x350 = -x112*x349;
  const double x351 = -x0*x254 - x0*x256 + x255*x342 + x264*x62*x63 + x266 - x339*x56;
  const double x352 = -x351;
  const double x353 = x166 + x340;
  const double x354 = 10*x17*x25 - x353;
  const double x355 = x1*x354;
  const double x356 = 10*x17;
  const double x357 = -x0*x166 - x277 - x356*x59;
  const double x358 = x129*x13 + x17*x79 + x281;
  const double x359 = x357*x7;
  const double x360 = x288*x355;
  const double x361 = x290*x359;
  const double x362 = x179*x356;
  const double x363 = 500*x59;
  const double x364 = x202 + x211*x298*x363 + x25*x303 + x300 - x323 - x362;
  const double x365 = 12500*x87;
  const double x366 = 500*x1*x15*x22*x87 - x195*x356 - x205*x295 - x213*x365 - x302 - x325 - x340;
  const double x367 = 1250*x1*x153*x22*x31*x79 - x159*x209 - x201*x210 - x211*x309 - x310 - x312;
  const double x368 = x19*x358;
  const double x369 = -50*x0*x153*x19*x31*x358 + x105*x368;
  const double x370 = -50*x0*x1*x15*x22*x354 + x222*x355 + x369;
  const double x371 = x12*x317;
  const double x372 = 3*x0*x15*x159*x4 + 500*x0*x15*x22*x87 + 500*x0*x15*x225*x25*x9 - x221*x365 - x305 - x323 - x353 - x362;
  const double x373 = x109*x225;
  const double x374 = 250*x1*x15*x25*x9 - x177*x356 - x296 - x306 - x326 - x363*x373;
  const double x375 = 450*x0*x15*x165*x4*x7 + 450*x0*x15*x22*x7*x98 + 50*x0*x15*x225*x79*x9 - x0*x311 + 25*x1*x15*x79*x9 - x152*x17 - x330;
  const double x376 = x210*x357;
  const double x377 = -x15*x358*x4;
  const double x378 = -x15*x375*x4;
  const double x379 = -125*x1*x15*x4*(x283*x354 + x283*x364 + x283*x366 - x286*x359 - x292*x358 - x319*x354 + x360 + x361 + x367*x67) - 125*x15*x4*(x0*x360 + x0*x361 - x181*x358 + x269*x359 - x285*x355 - x285*x357 + x322*x374 + x329*x372 + x375*x67) + x269*(x0*x345 - x0*x346 - x0*x350 + x1*x237*x341 - x18*x352 + x237*x343 + x272*x348) + x328*(-x123*x348 + x210*x352 + x244*x343 + x271*x341 + x345 - x346 - x350) + x334*(-x17*x374 - x354*x91 - 50*x357*x373 - x370 - x372*x91 - x377 - x378) + x336*(50*x1*x15*x22*x357 + x1*x15*x367*x4 + 50*x1*x153*x19*x31*x358 - x107*x368 - x122*x366 - x214*x357 - x229*x354 - x364*x91 - x376 - x377) + x371*(50*x0*x15*x211*x22*x357 + x0*x15*x367*x4 - x16*x354 - x16*x366 - x17*x364 - x370) + x371*(50*x0*x1*x15*x211*x22*x354 + 50*x0*x15*x22*x357 - x122*x372 - x16*x374 - x222*x357 - x369 - x376 - x378) - x67*(101250*x1*x20*x31*x354*x4*x7 + 450*x15*x20*x358*x67 + 101250*x20*x31*x357*x4*x7 - x269*x351 - x273*x355 - x273*x357 - x328*x347 - x349*x67);
  const double x380 = -x379;
  const double x381 = mu/sqrt(x44);
  const double x382 = (3.0/15625.0)*x381*x6;
  gam(0) = x*x382*(-x17*x380 - x231 - x338*x91);
  gam(1) = x382*y*(-x122*x338 - x16*x380 - x231);
  gam(2) = -1.0/3125.0*x381*(x121*x379 + x124*x337 + x230*x67);
  return gam;
}

LevelSetSample axisym_level_set(const Vec3& X) {
  const double x = X[0], y = X[1], z = X[2];
  const double rho = sqrt(x * x + y * y);
  LevelSetSample s;
  s.value = rho - 0.2 * sin(1.0 + 3.0 * z);
  s.grad = Vec3(x / rho, y / rho, -0.6 * cos(1.0 + 3.0 * z));
  const double r3 = rho * rho * rho;
  s.hess << y * y / r3, -x * y / r3, 0.0,
      -x * y / r3, x * x / r3, 0.0,
      0.0, 0.0, 1.8 * sin(1.0 + 3.0 * z);
  return s;
}

double axisym_exact_pressure(const Vec3& X, double mu) {
  // The in-plane momentum balance reduces to grad_G p = gamma with gamma the
  // viscous force of the reference velocity, and the traction-free outflow
  // plane fixes the pressure level on each surface:  -p + 2 mu (q.eps.q) = 0
  // at z = 3.  Integrate gamma along the meridian from the anchor downward.
  const double x = X[0], y = X[1], z = X[2];
  const double rho = sqrt(x * x + y * y);
  const double c = rho - 0.2 * sin(1.0 + 3.0 * z);
  const double th = std::atan2(y, x);
  auto point = [&](double zz) {
    const double r = c + 0.2 * sin(1.0 + 3.0 * zz);
    return Vec3(r * cos(th), r * sin(th), zz);
  };
  auto tangent = [&](double zz) {
    const double rp = 0.6 * cos(1.0 + 3.0 * zz);
    return Vec3(rp * cos(th), rp * sin(th), 1.0);
  };

  const Vec3 Xa = point(3.0);
  const GeometryFrame fa = evaluate_frame(axisym_level_set(Xa), 1e-12);
  const BoundaryTriad triad = boundary_frame(fa, Vec3(0.0, 0.0, 1.0));
  const Mat3 g = axisym_exact_velocity_gradient(Xa);
  const Mat3 eps = fa.P * (0.5 * (g + g.transpose())) * fa.P;
  const double anchor = 2.0 * mu * triad.q.dot(eps * triad.q);

  const int panels = std::max(8, static_cast<int>(std::ceil((3.0 - z) * 6)));
  const Rule1D rule = gauss_legendre(8);
  double integral = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = z + (3.0 - z) * p / panels;
    const double b = z + (3.0 - z) * (p + 1) / panels;
    for (std::size_t k = 0; k < rule.points.size(); ++k) {
      const double zz = 0.5 * (a + b) + 0.5 * (b - a) * rule.points[k];
      integral += 0.5 * (b - a) * rule.weights[k] *
                  axisym_momentum_source(point(zz), mu).dot(tangent(zz));
    }
  }
  return anchor - integral;
}

}  // namespace lsflow
