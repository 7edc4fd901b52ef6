#pragma once

// Sequences of boundary covers α_0 = {X}, α_1, ... with shrinking mesh and
// bounded common multiplicity of consecutive covers.

#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cancov/cover.hpp"

namespace cancov {

struct CoverSequence {
  std::vector<Cover> covers;        // over the boundary sample
  std::vector<double> mesh_targets;
  int common_mult_bound = 0;
};

/// Emits the i-th boundary cover for a pack. Implementations must return
/// {X} at i = 0 and a cover of mesh at most `mesh_target` afterwards.
class CoverProvider {
 public:
  virtual ~CoverProvider() = default;
  virtual std::string tag() const = 0;
  virtual int dim() const = 0;
  virtual Cover cover_at(const DiscretePack& pack, std::size_t i, double mesh_target) const = 0;
};

/// ε_i = k_sup * 2^-i.
inline double mesh_schedule(const DiscretePack& pack, std::size_t i) {
  return pack.k_sup() * std::ldexp(1.0, -static_cast<int>(i));
}

/// Partitions of X into clusters of radius < ε/2 around greedily chosen centres.
class FiniteDim0Provider : public CoverProvider {
 public:
  std::string tag() const override { return "finite_dim0"; }
  int dim() const override { return 0; }

  Cover cover_at(const DiscretePack& pack, std::size_t i, double mesh_target) const override {
    const PointSet& x = pack.boundary();
    if (i == 0) return whole_cover(x);
    std::vector<PointId> centers;
    Family blocks;
    for (PointId p : x) {
      std::size_t j = 0;
      while (j < centers.size() && !(pack.dist(p, centers[j]) < mesh_target / 2.0)) ++j;
      if (j == centers.size()) {
        centers.push_back(p);
        blocks.push_back({});
      }
      blocks[j].push_back(p);
    }
    return Cover{std::move(blocks), x};
  }
};

/// Overlapping closed arcs in the 1-D base parameter. Cover i >= 1 uses period
/// P_i = 2^-(i+1) / scale; arc j spans the overlap zones (width P_i/4) centred at
/// j P_i + o_i and (j+1) P_i + o_i, with o_{i+1} = o_i + P_i/4 so the zones of
/// consecutive covers never meet.
class IntervalDim1Provider : public CoverProvider {
 public:
  explicit IntervalDim1Provider(bool periodic = false, double scale = 1.0)
      : periodic_(periodic), scale_(scale) {}

  /// Circle samples are parametrized by angle / 2π.
  static IntervalDim1Provider for_pack(const DiscretePack& pack) {
    return pack.meta().base_periodic ? IntervalDim1Provider(true, 8.0) : IntervalDim1Provider(false, 1.0);
  }

  std::string tag() const override { return "interval_dim1"; }
  int dim() const override { return 1; }

  double period(std::size_t i) const { return std::ldexp(1.0, -static_cast<int>(i) - 1) / scale_; }

  double offset(std::size_t i) const {
    double o = 0.0;
    for (std::size_t j = 1; j < i; ++j) o += period(j) / 4.0;
    return o;
  }

  Cover cover_at(const DiscretePack& pack, std::size_t i, double /*mesh_target*/) const override {
    const PointSet& x = pack.boundary();
    const auto& param = pack.meta().base_param;
    if (param.size() != x.size())
      throw Error(ErrorCode::ProviderMismatch, "interval_dim1 needs a 1-D base parameter");
    if (i == 0) return whole_cover(x);
    const double p = period(i);
    // once arcs are far below the sampling gap every arc holds at most one point
    if (p < 1e-9) return singleton_cover(x);
    const double o = offset(i);
    const double half = p / 8.0;
    const double len = p + 2.0 * half;
    const long count = periodic_ ? static_cast<long>(std::llround(1.0 / p)) : 0;
    std::map<long, PointSet> by_arc;
    for (std::size_t b = 0; b < x.size(); ++b) {
      const long j0 = static_cast<long>(std::floor((param[b] - o - half) / p)) - 1;
      for (long j = j0; j <= j0 + 2; ++j) {
        const double a = static_cast<double>(j) * p + o - half;
        double s = param[b] - a;
        if (periodic_) s -= std::floor(s);
        if (s >= 0.0 && s <= len) by_arc[periodic_ ? ((j % count) + count) % count : j].push_back(x[b]);
      }
    }
    Family arcs;
    for (auto& [j, m] : by_arc) arcs.push_back(make_set(std::move(m)));
    return Cover{std::move(arcs), x};
  }

 private:
  bool periodic_;
  double scale_;
};

inline std::unique_ptr<CoverProvider> provider_for_dim(const DiscretePack& pack, int dim) {
  if (dim == 0) return std::make_unique<FiniteDim0Provider>();
  if (dim == 1) return std::make_unique<IntervalDim1Provider>(IntervalDim1Provider::for_pack(pack));
  throw Error(ErrorCode::ProviderMismatch,
              "no shipped provider for dimension " + std::to_string(dim) + "; plug one in");
}

/// First `count` covers of a provider with the sequence invariants checked.
inline CoverSequence make_sequence(const CoverProvider& provider, const DiscretePack& pack,
                                   std::size_t count) {
  CoverSequence seq;
  seq.common_mult_bound = provider.dim() + 2;
  for (std::size_t i = 0; i < count; ++i) {
    const double target = mesh_schedule(pack, i);
    Cover c = provider.cover_at(pack, i, target);
    if (!c.covers()) throw Error(ErrorCode::ProviderInvariant, "cover " + std::to_string(i) + " misses X");
    if (i == 0 && !(c.members.size() == 1 && c.members[0] == pack.boundary()))
      throw Error(ErrorCode::ProviderInvariant, "first cover must be {X}");
    if (i > 0 && mesh(pack, c) > target)
      throw Error(ErrorCode::ProviderInvariant, "mesh of cover " + std::to_string(i));
    if (provider.dim() <= 1 && multiplicity(c) > provider.dim() + 1)
      throw Error(ErrorCode::ProviderInvariant, "multiplicity of cover " + std::to_string(i));
    if (i > 0 && common_multiplicity(seq.covers.back(), c) > seq.common_mult_bound)
      throw Error(ErrorCode::ProviderInvariant,
                  "common multiplicity of covers " + std::to_string(i - 1) + "," + std::to_string(i));
    seq.covers.push_back(std::move(c));
    seq.mesh_targets.push_back(target);
  }
  return seq;
}

}  // namespace cancov
