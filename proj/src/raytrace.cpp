// SPDX-License-Identifier: Apache-2.0
//
// manhattan-emf: rate and EMF exposure analysis for Manhattan street grids
// Copyright (C) 2026 The manhattan-emf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "manhattan/raytrace.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

#include <omp.h>

#include "manhattan/rng.hpp"

namespace manhattan {

namespace {

constexpr double kGeomEps = 1e-7;  // m
constexpr std::uint64_t kObstacleStream = 11;
constexpr std::uint64_t kSideStream = 12;
constexpr std::uint64_t kRtUserStream = 7;

Vec3 mirror(const Vec3& p, const Plane& pl) {
  const double h = pl.normal.dot(p) - pl.offset;
  return p - pl.normal * (2.0 * h);
}

double height_above(const Vec3& p, const Plane& pl) { return pl.normal.dot(p) - pl.offset; }

// Intersection of segment a->b with the plane; parameter t in (0,1) or -1.
double cross_plane(const Vec3& a, const Vec3& b, const Plane& pl) {
  const double ha = height_above(a, pl), hb = height_above(b, pl);
  if (ha * hb >= 0.0) return -1.0;
  return ha / (ha - hb);
}

bool segment_hits_box(const Vec3& a, const Vec3& b, const Box& box) {
  double t0 = 0.0, t1 = 1.0;
  const std::array<double, 3> pa{a.x, a.y, a.z}, d{b.x - a.x, b.y - a.y, b.z - a.z};
  const std::array<double, 3> lo{box.lo.x, box.lo.y, box.lo.z}, hi{box.hi.x, box.hi.y, box.hi.z};
  for (int i = 0; i < 3; ++i) {
    if (std::abs(d[i]) < 1e-300) {
      if (pa[i] <= lo[i] || pa[i] >= hi[i]) return false;
      continue;
    }
    double ta = (lo[i] - pa[i]) / d[i], tb = (hi[i] - pa[i]) / d[i];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 >= t1) return false;
  }
  return t1 - t0 > 1e-12;
}

void strip_interval(double a, double d, double center, double half,
                    std::vector<std::pair<double, double>>& out) {
  if (std::abs(d) < 1e-300) {
    if (std::abs(a - center) <= half + kGeomEps) out.emplace_back(0.0, 1.0);
    return;
  }
  double t0 = (center - half - kGeomEps - a) / d, t1 = (center + half + kGeomEps - a) / d;
  if (t0 > t1) std::swap(t0, t1);
  t0 = std::max(t0, 0.0);
  t1 = std::min(t1, 1.0);
  if (t0 <= t1) out.emplace_back(t0, t1);
}

double cot(double x) { return std::cos(x) / std::sin(x); }

// Transition function F(X) = 2j sqrt(X) e^{jX} int_{sqrt X}^inf e^{-j tau^2} dtau.
cplx transition_function(double X) {
  if (X <= 0.0) return {0.0, 0.0};
  if (X >= 40.0) {
    // Asymptotic series sum (-1)^n (2n-1)!! / (2jX)^n; smooth in X, unlike the
    // e^{jX} * tail product whose phases cancel.
    cplx sum(1.0, 0.0), term(1.0, 0.0);
    const cplx ratio = 1.0 / cplx(0.0, 2.0 * X);
    for (int n = 1; n < 60; ++n) {
      const cplx next = term * (-(2.0 * n - 1.0)) * ratio;
      if (std::abs(next) >= std::abs(term)) break;
      term = next;
      sum += term;
      if (std::abs(term) < 1e-17) break;
    }
    return sum;
  }
  const double u = std::sqrt(X);
  const double v = u * std::sqrt(2.0 / kPi);
  double C, S;
  fresnel_integrals(v, C, S);
  const cplx tail = std::sqrt(kPi / 2.0) * cplx(0.5 - C, -(0.5 - S));
  return cplx(0.0, 2.0) * u * std::exp(cplx(0.0, X)) * tail;
}

double a_pm(double beta, double n, int sign) {
  const double N = std::round((beta + sign * kPi) / (2.0 * kPi * n));
  const double c = std::cos((2.0 * kPi * n * N - beta) / 2.0);
  return 2.0 * c * c;
}

double edge_angle(const Edge& e, double vx, double vy) {
  const double a0 = e.sx > 0 ? 0.0 : kPi;
  const double sigma = (e.sx == e.sy) ? -1.0 : 1.0;
  double phi = sigma * (std::atan2(vy, vx) - a0);
  phi = std::fmod(phi, 2.0 * kPi);
  if (phi < 0.0) phi += 2.0 * kPi;
  return phi;
}

}  // namespace

void RtSceneConfig::validate(const NetworkConfig& config) const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(name) + " must be positive");
  };
  positive(street_width_w_S, "street_width_w_S");
  positive(obstacle_length, "obstacle_length");
  positive(obstacle_width, "obstacle_width");
  positive(obstacle_height, "obstacle_height");
  if (!(obstacle_density_lambda_O >= 0.0)) throw DomainError("obstacle density must be >= 0");
  if (!(bs_wall_offset_d_BU > 0.0) || !(bs_wall_offset_d_BU < street_width_w_S / 2.0))
    throw DomainError("bs_wall_offset_d_BU must lie in (0, w_S/2)");
  if (!(path_power_threshold >= 0.0 && path_power_threshold < 1.0))
    throw DomainError("path_power_threshold must lie in [0, 1)");
  if (!(grazing_clip_rad >= 0.0)) throw DomainError("grazing_clip_rad must be >= 0");
  if (obstacle_height >= config.bs_height_h_B)
    throw DomainError("obstacle_height must be below the BS height");
  if (config.user_height_h_U <= 0.0) throw DomainError("user height must be positive");
}

void fresnel_integrals(double x, double& C, double& S) {
  constexpr double kEps = 1e-16, kFpMin = 1e-300, kXMin = 1.5;
  constexpr int kMaxIt = 200;
  const double ax = std::abs(x);
  if (ax < 1e-150) {
    C = ax;
    S = 0.0;
  } else if (ax <= kXMin) {
    double sum = 0.0, sums = 0.0, sumc = ax, sign = 1.0;
    const double fact = kPi / 2.0 * ax * ax;
    bool odd = true;
    double term = ax;
    int n = 3;
    for (int k = 1; k <= kMaxIt; ++k) {
      term *= fact / k;
      sum += sign * term / n;
      const double test = std::abs(sum) * kEps;
      if (odd) {
        sign = -sign;
        sums = sum;
        sum = sumc;
      } else {
        sumc = sum;
        sum = sums;
      }
      if (term < test) break;
      odd = !odd;
      n += 2;
    }
    S = sums;
    C = sumc;
  } else {
    const double pix2 = kPi * ax * ax;
    cplx b(1.0, -pix2);
    cplx cc = 1.0 / kFpMin;
    cplx d = 1.0 / b, h = d;
    int n = -1;
    for (int k = 2; k <= kMaxIt; ++k) {
      n += 2;
      const double a = -n * (n + 1.0);
      b += 4.0;
      d = 1.0 / (a * d + b);
      cc = b + a / cc;
      const cplx del = cc * d;
      h *= del;
      if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < kEps) break;
    }
    h *= cplx(ax, -ax);
    const cplx cs = cplx(0.5, 0.5) * (1.0 - cplx(std::cos(0.5 * pix2), std::sin(0.5 * pix2)) * h);
    C = cs.real();
    S = cs.imag();
  }
  if (x < 0.0) {
    C = -C;
    S = -S;
  }
}

cplx reflection_coefficient(cplx eps, double cos_i, bool te) {
  cos_i = std::clamp(std::abs(cos_i), 0.0, 1.0);
  const double sin2 = 1.0 - cos_i * cos_i;
  cplx root = std::sqrt(eps - sin2);
  if (root.real() < 0.0) root = -root;
  if (te) return (cos_i - root) / (cos_i + root);
  return (eps * cos_i - root) / (eps * cos_i + root);
}

cplx utd_wedge_coefficient(double phi, double phi_i, double L, double k, double sin_beta0,
                           double n, bool soft) {
  const cplx pre = -std::exp(cplx(0.0, -kPi / 4.0)) /
                   (2.0 * n * std::sqrt(2.0 * kPi * k) * sin_beta0);
  auto term = [&](double beta, int sign) {
    double arg = (kPi + sign * beta) / (2.0 * n);
    // The product cot * F stays finite at shadow boundaries; step off the pole.
    if (std::abs(std::sin(arg)) < 1e-9) arg += 1e-9;
    return cot(arg) * transition_function(k * L * a_pm(beta, n, sign));
  };
  const double bm = phi - phi_i, bp = phi + phi_i;
  const cplx diff = term(bm, +1) + term(bm, -1);
  const cplx refl = term(bp, +1) + term(bp, -1);
  return pre * (soft ? diff - refl : diff + refl);
}

// ---------------------------------------------------------------- scene

RtScene RtScene::open_ground(const RtSceneConfig& rt) {
  RtScene s;
  s.rt_ = rt;
  s.buildings_ = false;
  return s;
}

RtScene RtScene::build(const ManhattanScene& scene, const NetworkConfig& config,
                       const RtSceneConfig& rt, std::uint64_t seed) {
  rt.validate(config);
  RtScene s;
  s.rt_ = rt;
  s.user_type_ = scene.user_type;
  const double w = rt.street_width_w_S;
  const double keep_out = std::max(scene.exclusion_radius_r_s, w / 2.0);
  const double sidewalk = w / 2.0 - rt.bs_wall_offset_d_BU;
  const CounterRng root(seed, 0);
  CounterRng side = root.split(kSideStream);
  std::uint64_t id = 0;

  auto add_axis = [&](const std::vector<Street>& streets, std::vector<double>& coords,
                      std::vector<bool>& typ, bool typical_other_axis) {
    for (const auto& st : streets) {
      if (!st.typical && std::abs(st.coordinate) < keep_out) {
        id += st.bs_offsets.size();
        continue;
      }
      coords.push_back(st.coordinate);
      typ.push_back(st.typical);
      // BSs of typical streets and of streets crossing a typical street.
      const bool include = st.typical || typical_other_axis;
      for (double u : st.bs_offsets) {
        const double t = side.uniform() < 0.5 ? -sidewalk : sidewalk;
        if (include) {
          Transmitter tx;
          tx.id = id;
          tx.typical = st.typical;
          tx.street_axis = st.axis;
          tx.street_coordinate = st.coordinate;
          tx.along = u;
          tx.position = st.axis == Axis::Horizontal
                            ? Vec3{u, st.coordinate + t, config.bs_height_h_B}
                            : Vec3{st.coordinate + t, u, config.bs_height_h_B};
          s.tx_.push_back(tx);
        }
        ++id;
      }
    }
  };
  bool typical_h = false, typical_v = false;
  for (const auto& st : scene.horizontal) typical_h |= st.typical;
  for (const auto& st : scene.vertical) typical_v |= st.typical;
  add_axis(scene.horizontal, s.hy_, s.hy_typical_, typical_v);
  add_axis(scene.vertical, s.vx_, s.vx_typical_, typical_h);

  const double hu = config.user_height_h_U;
  s.user_ = scene.user_type == UserType::Street ? Vec3{0.0, -sidewalk, hu}
                                                : Vec3{-sidewalk, -sidewalk, hu};

  // Cars in the typical streets, centered on a random lane.
  const double R = scene.half_size_R;
  CounterRng orng = root.split(kObstacleStream);
  auto clashes = [&](const Box& b) {
    auto inside = [&](const Vec3& p) {
      return p.x > b.lo.x - 0.5 && p.x < b.hi.x + 0.5 && p.y > b.lo.y - 0.5 &&
             p.y < b.hi.y + 0.5;
    };
    if (inside(s.user_)) return true;
    for (const auto& tx : s.tx_)
      if (inside(tx.position)) return true;
    return false;
  };
  int street_index = 0;
  for (const auto* list : {&scene.horizontal, &scene.vertical}) {
    for (const auto& st : *list) {
      if (!st.typical) continue;
      CounterRng r = orng.split(static_cast<std::uint64_t>(street_index++));
      const auto count = sample_poisson(r, 2.0 * R * rt.obstacle_density_lambda_O);
      for (std::int64_t c = 0; c < count; ++c) {
        for (int attempt = 0; attempt < 100; ++attempt) {
          const double along = -R + 2.0 * R * r.uniform();
          const double lane = (r.uniform() < 0.5 ? -w : w) / 4.0;
          const double hl = rt.obstacle_length / 2.0, hw = rt.obstacle_width / 2.0;
          Box b;
          if (st.axis == Axis::Horizontal) {
            b.lo = {along - hl, st.coordinate + lane - hw, 0.0};
            b.hi = {along + hl, st.coordinate + lane + hw, rt.obstacle_height};
          } else {
            b.lo = {st.coordinate + lane - hw, along - hl, 0.0};
            b.hi = {st.coordinate + lane + hw, along + hl, rt.obstacle_height};
          }
          if (!clashes(b)) {
            s.obstacles_.push_back(b);
            break;
          }
        }
      }
    }
  }
  return s;
}

bool RtScene::in_street(double x, double y) const {
  if (!buildings_) return true;
  const double half = rt_.street_width_w_S / 2.0;
  for (double c : hy_)
    if (std::abs(y - c) <= half) return true;
  for (double c : vx_)
    if (std::abs(x - c) <= half) return true;
  return false;
}

bool RtScene::segment_clear(const Vec3& a, const Vec3& b, bool obstacles) const {
  if (buildings_) {
    const double half = rt_.street_width_w_S / 2.0;
    std::vector<std::pair<double, double>> iv;
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double ylo = std::min(a.y, b.y) - half, yhi = std::max(a.y, b.y) + half;
    const double xlo = std::min(a.x, b.x) - half, xhi = std::max(a.x, b.x) + half;
    for (double c : hy_)
      if (c >= ylo && c <= yhi) strip_interval(a.y, dy, c, half, iv);
    for (double c : vx_)
      if (c >= xlo && c <= xhi) strip_interval(a.x, dx, c, half, iv);
    std::sort(iv.begin(), iv.end());
    double reach = 0.0;
    const double slack = kGeomEps / std::max(std::hypot(dx, dy), 1.0);
    for (const auto& [t0, t1] : iv) {
      if (t0 > reach + slack) return false;
      reach = std::max(reach, t1);
    }
    if (reach < 1.0 - slack) return false;
  }
  if (obstacles)
    for (const auto& box : obstacles_)
      if (segment_hits_box(a, b, box)) return false;
  return true;
}

bool RtScene::on_wall(const Vec3& q, const Plane& p) const {
  if (p.ground) return in_street(q.x, q.y);
  if (!buildings_) return false;
  // The point just behind the wall must be building.
  const Vec3 behind = q - p.normal * 1e-4;
  const Vec3 front = q + p.normal * 1e-4;
  return !in_street(behind.x, behind.y) && in_street(front.x, front.y);
}

std::vector<Plane> RtScene::candidate_planes(const Transmitter& tx) const {
  std::vector<Plane> planes;
  planes.push_back(Plane{{0.0, 0.0, 1.0}, 0.0, true});
  if (!buildings_) return planes;
  const double half = rt_.street_width_w_S / 2.0;
  auto add_street = [&](Axis axis, double c) {
    if (axis == Axis::Horizontal) {
      planes.push_back(Plane{{0.0, -1.0, 0.0}, -(c + half), false});
      planes.push_back(Plane{{0.0, 1.0, 0.0}, c - half, false});
    } else {
      planes.push_back(Plane{{-1.0, 0.0, 0.0}, -(c + half), false});
      planes.push_back(Plane{{1.0, 0.0, 0.0}, c - half, false});
    }
  };
  for (std::size_t i = 0; i < hy_.size(); ++i)
    if (hy_typical_[i]) add_street(Axis::Horizontal, hy_[i]);
  for (std::size_t i = 0; i < vx_.size(); ++i)
    if (vx_typical_[i]) add_street(Axis::Vertical, vx_[i]);
  if (!tx.typical) add_street(tx.street_axis, tx.street_coordinate);
  return planes;
}

std::vector<Edge> RtScene::candidate_edges(const Transmitter& tx) const {
  std::vector<Edge> edges;
  if (!buildings_ || tx.typical) return edges;
  const double half = rt_.street_width_w_S / 2.0;
  auto corners = [&](double x0, double y0) {
    for (int sx : {-1, 1})
      for (int sy : {-1, 1}) {
        Edge e{x0 + sx * half, y0 + sy * half, sx, sy};
        if (!in_street(e.x + sx * 1e-4, e.y + sy * 1e-4)) edges.push_back(e);
      }
  };
  if (tx.street_axis == Axis::Vertical) {
    for (std::size_t i = 0; i < hy_.size(); ++i)
      if (hy_typical_[i]) corners(tx.street_coordinate, hy_[i]);
  } else {
    for (std::size_t i = 0; i < vx_.size(); ++i)
      if (vx_typical_[i]) corners(vx_[i], tx.street_coordinate);
  }
  return edges;
}

// ---------------------------------------------------------------- paths

double RayPath::unfolded_length() const {
  double s = 0.0;
  for (double l : segment_lengths) s += l;
  return s;
}

namespace {

void finish(RayPath& p) {
  p.segment_lengths.clear();
  Vec3 prev = p.source;
  for (const auto& it : p.interactions) {
    p.segment_lengths.push_back((it.point - prev).norm());
    prev = it.point;
  }
  p.segment_lengths.push_back((p.target - prev).norm());
}

bool clear_chain(const RtScene& s, const Vec3& a, const std::vector<Interaction>& mid,
                 const Vec3& b) {
  Vec3 prev = a;
  for (const auto& it : mid) {
    if (!s.segment_clear(prev, it.point)) return false;
    prev = it.point;
  }
  return s.segment_clear(prev, b);
}

// Keller point on a vertical edge between a and b.
Vec3 keller_point(const Edge& e, const Vec3& a, const Vec3& b) {
  const double ra = std::hypot(a.x - e.x, a.y - e.y), rb = std::hypot(b.x - e.x, b.y - e.y);
  const double z = a.z + (b.z - a.z) * ra / (ra + rb);
  return {e.x, e.y, z};
}

bool exterior(const Edge& e, const Vec3& p) {
  const double phi = edge_angle(e, p.x - e.x, p.y - e.y);
  return phi > 1e-9 && phi < 1.5 * kPi - 1e-9;
}

// Reflection points for the ordered planes, or false if the image chain fails.
bool image_points(const Vec3& tx, const Vec3& rx, const std::vector<const Plane*>& planes,
                  std::vector<Vec3>& points) {
  std::vector<Vec3> images{tx};
  for (const auto* pl : planes) images.push_back(mirror(images.back(), *pl));
  points.assign(planes.size(), Vec3{});
  Vec3 target = rx;
  for (std::size_t i = planes.size(); i-- > 0;) {
    const Plane& pl = *planes[i];
    const Vec3& img = images[i + 1];
    if (height_above(target, pl) <= 0.0) return false;
    const double t = cross_plane(target, img, pl);
    if (t <= 0.0 || t >= 1.0) return false;
    points[i] = target + (img - target) * t;
    target = points[i];
  }
  return height_above(tx, *planes.front()) > 0.0;
}

bool same_plane(const Plane& a, const Plane& b) {
  return a.ground == b.ground && a.normal.dot(b.normal) > 0.999999 &&
         std::abs(a.offset - b.offset) < 1e-9;
}

}  // namespace

std::vector<RayPath> enumerate_paths(const RtScene& scene, const Vec3& tx, const Vec3& rx,
                                     const Transmitter* info) {
  std::vector<RayPath> out;
  Transmitter dummy;
  dummy.typical = true;
  const Transmitter& t = info ? *info : dummy;

  auto base = [&] {
    RayPath p;
    p.source = tx;
    p.target = rx;
    return p;
  };

  if (scene.segment_clear(tx, rx)) {
    RayPath p = base();
    finish(p);
    out.push_back(std::move(p));
  }

  const auto planes = scene.candidate_planes(t);
  std::vector<Vec3> pts;
  auto try_reflections = [&](const std::vector<const Plane*>& seq) {
    if (!image_points(tx, rx, seq, pts)) return;
    RayPath p = base();
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (!scene.on_wall(pts[i], *seq[i])) return;
      p.interactions.push_back({pts[i], InteractionKind::Reflection, *seq[i], {}});
    }
    if (!clear_chain(scene, tx, p.interactions, rx)) return;
    finish(p);
    out.push_back(std::move(p));
  };
  for (const auto& a : planes) try_reflections({&a});
  for (const auto& a : planes)
    for (const auto& b : planes) {
      if (same_plane(a, b)) continue;
      try_reflections({&a, &b});
    }

  for (const auto& e : scene.candidate_edges(t)) {
    if (!exterior(e, tx) || !exterior(e, rx)) continue;
    {
      RayPath p = base();
      const Vec3 s = keller_point(e, tx, rx);
      p.interactions.push_back({s, InteractionKind::Diffraction, {}, e});
      if (clear_chain(scene, tx, p.interactions, rx)) {
        finish(p);
        out.push_back(std::move(p));
      }
    }
    if (!scene.config().reflect_then_diffract) continue;
    for (const auto& pl : planes) {
      const Vec3 img = mirror(tx, pl);
      if (height_above(tx, pl) <= 0.0) continue;
      const Vec3 s = keller_point(e, img, rx);
      if (height_above(s, pl) <= 0.0) continue;
      const double tq = cross_plane(s, img, pl);
      if (tq <= 0.0 || tq >= 1.0) continue;
      const Vec3 q = s + (img - s) * tq;
      if (!scene.on_wall(q, pl)) continue;
      RayPath p = base();
      p.interactions.push_back({q, InteractionKind::Reflection, pl, {}});
      p.interactions.push_back({s, InteractionKind::Diffraction, {}, e});
      if (!clear_chain(scene, tx, p.interactions, rx)) continue;
      finish(p);
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<RayPath> enumerate_paths(const RtScene& scene, std::size_t bs_index) {
  const auto& tx = scene.transmitters().at(bs_index);
  return enumerate_paths(scene, tx.position, scene.user(), &tx);
}

cplx field_contribution(const RayPath& path, const RtSceneConfig& rt, double frequency,
                        int* clipped) {
  if (!(frequency > 0.0)) throw DomainError("frequency must be positive");
  const double k = 2.0 * kPi * frequency / kSpeedOfLight;
  const bool vertical = rt.polarization == Polarization::Vertical;
  cplx gain(1.0, 0.0);
  double s_in = 0.0;  // unfolded length up to the current vertex
  Vec3 prev = path.source;
  for (std::size_t i = 0; i < path.interactions.size(); ++i) {
    const auto& it = path.interactions[i];
    const double seg = path.segment_lengths.at(i);
    s_in += seg;
    if (it.kind == InteractionKind::Reflection) {
      const Vec3 d = (it.point - prev) * (1.0 / seg);
      double cos_i = std::abs(d.dot(it.plane.normal));
      if (cos_i < std::sin(rt.grazing_clip_rad)) {
        cos_i = std::sin(rt.grazing_clip_rad);
        if (clipped) ++*clipped;
      }
      // Vertical E is transverse to the plane of incidence on walls and lies
      // in it on the ground; horizontal polarization swaps the roles.
      const bool te = it.plane.ground ? !vertical : vertical;
      gain *= reflection_coefficient(it.plane.ground ? rt.ground_permittivity
                                                     : rt.building_permittivity,
                                     cos_i, te);
      prev = it.point;
      continue;
    }
    if (i + 1 != path.interactions.size())
      throw std::logic_error("diffraction must be the last interaction");
    const double s_out = path.segment_lengths.back();
    const Vec3 to_rx = path.target - it.point;
    const Vec3 to_src = prev - it.point;
    const double sin_b0 = std::max(to_rx.norm_xy() / to_rx.norm(), 1e-12);
    const double L = s_in * s_out / (s_in + s_out) * sin_b0 * sin_b0;
    const double phi = edge_angle(it.edge, to_rx.x, to_rx.y);
    const double phi_i = edge_angle(it.edge, to_src.x, to_src.y);
    const cplx D = utd_wedge_coefficient(phi, phi_i, L, k, sin_b0, 1.5, vertical);
    const cplx inc = std::exp(cplx(0.0, -k * s_in)) / s_in;
    return gain * inc * D * std::sqrt(s_in / (s_out * (s_in + s_out))) *
           std::exp(cplx(0.0, -k * s_out));
  }
  const double L = s_in + path.segment_lengths.back();
  return gain * std::exp(cplx(0.0, -k * L)) / L;
}

double received_power_rt(std::vector<RayPath>& paths, const PropagationParams& params,
                         const RtSceneConfig& rt, int* clipped) {
  double strongest = 0.0;
  for (auto& p : paths) {
    p.field = field_contribution(p, rt, params.frequency_f, clipped);
    strongest = std::max(strongest, std::norm(p.field));
  }
  const double floor = rt.path_power_threshold * strongest;
  std::erase_if(paths, [&](const RayPath& p) { return std::norm(p.field) < floor; });
  return received_power_rt(std::span<const RayPath>(paths), params);
}

double received_power_rt(std::span<const RayPath> paths, const PropagationParams& params) {
  cplx total(0.0, 0.0);
  for (const auto& p : paths) total += p.field;
  const double g = kSpeedOfLight / (4.0 * kPi * params.frequency_f);
  return params.tx_power_P_B * g * g * std::norm(total);
}

// ---------------------------------------------------------------- driver

RtRealization simulate_rt_realization(const NetworkConfig& config, const PropagationParams& params,
                                      const RtSceneConfig& rt, UserType user_type,
                                      std::uint64_t seed, std::uint64_t stream) {
  if (config.infinite()) throw DomainError("ray tracing needs a finite half_size_R");
  rt.validate(config);
  RtRealization out;
  for (std::uint64_t attempt = 0;; ++attempt) {
    if (attempt > 1000) throw NumericFailure("no typical-street BS after 1000 redraws", 0.0);
    const std::uint64_t scene_seed =
        splitmix64(seed ^ splitmix64(stream * 0x9E3779B97F4A7C15ULL + attempt + 1));
    const auto ms = sample_scene(config, user_type, scene_seed);
    const RtScene scene = RtScene::build(ms, config, rt, scene_seed);
    const auto& txs = scene.transmitters();
    std::size_t serving = txs.size();
    double best = kInfinity;
    for (std::size_t i = 0; i < txs.size(); ++i) {
      if (!txs[i].typical) continue;
      const double d = std::abs(txs[i].along);
      if (d < best) {
        best = d;
        serving = i;
      }
    }
    if (serving == txs.size()) continue;

    out = RtRealization{};
    out.placement.x = scene.user().x;
    out.placement.y = scene.user().y;
    out.placement.vertical_streets = scene.vertical_streets();
    out.placement.horizontal_streets = scene.horizontal_streets();
    out.placement.street_width = rt.street_width_w_S;
    auto& pw = out.powers;
    pw.user_type = user_type;
    pw.serving_distance = best;
    for (std::size_t i = 0; i < txs.size(); ++i) {
      const auto& tx = txs[i];
      auto paths = enumerate_paths(scene, i);
      const double P = paths.empty() ? 0.0 : received_power_rt(paths, params, rt, &out.clip_events);
      const bool los = tx.typical && scene.segment_clear(tx.position, scene.user());
      if (i == serving) {
        pw.S = P;
        pw.serving_is_los = los;
      } else if (!tx.typical) {
        pw.I_D += P;
      } else if (los) {
        pw.I_L += P;
      } else {
        pw.I_N += P;
      }
      if (P > 0.0) {
        LinkRecord r;
        r.realization = stream;
        r.bs_id = tx.id;
        r.category = !tx.typical ? LinkCategory::Diffraction
                                 : (los ? LinkCategory::LOS : LinkCategory::NLOS);
        r.distance_m = tx.typical ? std::abs(tx.along)
                                  : std::abs(tx.street_coordinate) + std::abs(tx.along);
        r.los = los;
        r.power_W = P;
        r.path_count = static_cast<int>(paths.size());
        r.user_type = user_type;
        out.links.push_back(r);
      }
    }
    return out;
  }
}

namespace {

template <bool Parallel>
std::vector<RtRealization> rt_batch(std::size_t n, const NetworkConfig& config,
                                    const PropagationParams& params, const RtSceneConfig& rt,
                                    double eta, std::uint64_t seed_base) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("eta must lie in [0, 1]");
  std::vector<RtRealization> out(n);
  std::exception_ptr error;
  auto body = [&](std::size_t i) {
    CounterRng urng = CounterRng(seed_base, i).split(kRtUserStream);
    const UserType u = urng.uniform() < eta ? UserType::Crossroad : UserType::Street;
    out[i] = simulate_rt_realization(config, params, rt, u, seed_base, i);
  };
  if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
      try {
        body(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical
        if (!error) error = std::current_exception();
      }
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) body(i);
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace

std::vector<RtRealization> simulate_rt_batch(std::size_t n, const NetworkConfig& config,
                                             const PropagationParams& params,
                                             const RtSceneConfig& rt, double eta,
                                             std::uint64_t seed_base) {
  return rt_batch<true>(n, config, params, rt, eta, seed_base);
}

std::vector<RtRealization> simulate_rt_batch_serial(std::size_t n, const NetworkConfig& config,
                                                    const PropagationParams& params,
                                                    const RtSceneConfig& rt, double eta,
                                                    std::uint64_t seed_base) {
  return rt_batch<false>(n, config, params, rt, eta, seed_base);
}

}  // namespace manhattan
