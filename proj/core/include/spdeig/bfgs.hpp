#pragma once

#include "spdeig/deflation.hpp"
#include "spdeig/ichol.hpp"
#include "spdeig/sparse.hpp"

#include <cstdint>
#include <vector>

namespace spdeig {

struct BfgsPair {
  Vector s;
  Vector r;
  double alpha = 0.0;  // s'r, computed once at insertion, negative by contract
};

/// Ring buffer of at most k_max (s, r, alpha) corrections defining the
/// BFGS-updated preconditioner. Strict FIFO: a full window overwrites the
/// oldest pair. With k_max = 0 the window stays empty and the preconditioner
/// degenerates to the fixed initial one.
class BfgsWindow {
 public:
  explicit BfgsWindow(index_t k_max) : k_max_(k_max) {
    if (k_max < 0) k_max_ = 0;
  }

  enum class Push { Stored, RejectedSign, RejectedTiny, Disabled };

  /// alpha = s'r must be negative and not vanishingly small relative to
  /// |s||r|; otherwise the pair is rejected and the window is unchanged,
  /// which keeps the preconditioner SPD on the projected subspace.
  Push push(const Vector& s, const Vector& r);

  /// Bypasses the sign guard. Diagnostics only: lets tests demonstrate the
  /// indefiniteness a wrong-sign pair causes.
  void push_unchecked(Vector s, Vector r);

  index_t capacity() const { return k_max_; }
  index_t size() const { return static_cast<index_t>(slots_.size()); }
  bool empty() const { return slots_.empty(); }
  long long rejected() const { return rejected_; }
  void clear();

  /// Pairs in logical order, index 0 the oldest retained.
  const BfgsPair& pair(index_t i) const;

 private:
  index_t k_max_;
  std::vector<BfgsPair> slots_;
  long long pushes_ = 0;
  long long rejected_ = 0;
};

/// c = P_k g: backward sweep over the stored pairs (newest to oldest),
/// one (L L')^{-1} solve, forward sweep (oldest to newest), then the
/// deflation projection. Assumes g is already orthogonal to the basis.
/// Cost: 2k dots + 2k axpys + one triangular solve pair + the projection.
void apply_preconditioner(const BfgsWindow& w, const ICFactor& F,
                          const DeflationBasis& basis, const Vector& g,
                          Vector& c);
Vector apply_preconditioner(const BfgsWindow& w, const ICFactor& F,
                            const DeflationBasis& basis, const Vector& g);

struct SpdProbeReport {
  int trials = 0;
  int failures = 0;         // z'Pz <= 0 occurrences
  double min_quadratic = 0.0;
  bool pass() const { return failures == 0; }
};

/// Randomized SPD witness: random z projected orthogonal to the basis must
/// give z'Pz > 0 every time. Diagnostic, test-mode only.
SpdProbeReport spd_probe(const BfgsWindow& w, const ICFactor& F,
                         const DeflationBasis& basis, int trials,
                         std::uint64_t seed = 9001);

}  // namespace spdeig
