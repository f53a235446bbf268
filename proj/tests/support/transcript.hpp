#ifndef INEQ_TESTS_TRANSCRIPT_HPP
#define INEQ_TESTS_TRANSCRIPT_HPP

// Random sources that record every primitive draw and play it back, so two
// implementations can be driven by the same sequence.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ineq::testing {

struct Draw {
  enum class Kind { Index, Unit, Normal };
  Kind kind;
  std::size_t bound = 0;  // index draws only
  std::size_t index = 0;
  double real = 0.0;
};

template <typename Inner>
class RecordingRng {
 public:
  explicit RecordingRng(Inner inner) : inner_(std::move(inner)) {}

  std::size_t index(std::size_t n) {
    const std::size_t v = inner_.index(n);
    log_.push_back({Draw::Kind::Index, n, v, 0.0});
    return v;
  }
  double unit() {
    const double v = inner_.unit();
    log_.push_back({Draw::Kind::Unit, 0, 0, v});
    return v;
  }
  double normal() {
    const double v = inner_.normal();
    log_.push_back({Draw::Kind::Normal, 0, 0, v});
    return v;
  }

  const std::vector<Draw>& transcript() const { return log_; }

 private:
  Inner inner_;
  std::vector<Draw> log_;
};

/// Replays a transcript; any mismatch in draw kind or bound throws.
class ReplayRng {
 public:
  explicit ReplayRng(std::vector<Draw> log) : log_(std::move(log)) {}

  std::size_t index(std::size_t n) {
    const Draw& d = next(Draw::Kind::Index);
    if (d.bound != n) {
      throw std::logic_error("replay: index bound " + std::to_string(n) + " != recorded " + std::to_string(d.bound));
    }
    return d.index;
  }
  double unit() { return next(Draw::Kind::Unit).real; }
  double normal() { return next(Draw::Kind::Normal).real; }

  bool exhausted() const { return pos_ == log_.size(); }
  std::size_t consumed() const { return pos_; }

 private:
  const Draw& next(Draw::Kind k) {
    if (pos_ >= log_.size()) throw std::logic_error("replay: transcript exhausted");
    const Draw& d = log_[pos_++];
    if (d.kind != k) throw std::logic_error("replay: draw kind mismatch at " + std::to_string(pos_ - 1));
    return d;
  }

  std::vector<Draw> log_;
  std::size_t pos_ = 0;
};

/// Scripted source: index and unit draws come from fixed queues.
class ScriptedRng {
 public:
  ScriptedRng(std::vector<std::size_t> indices, std::vector<double> units, std::vector<double> normals = {})
      : indices_(std::move(indices)), units_(std::move(units)), normals_(std::move(normals)) {}

  std::size_t index(std::size_t n) {
    if (ii_ >= indices_.size()) throw std::logic_error("scripted: out of index draws");
    const std::size_t v = indices_[ii_++];
    if (v >= n) throw std::logic_error("scripted: index out of range");
    return v;
  }
  double unit() {
    if (ui_ >= units_.size()) throw std::logic_error("scripted: out of unit draws");
    return units_[ui_++];
  }
  double normal() {
    if (ni_ >= normals_.size()) throw std::logic_error("scripted: out of normal draws");
    return normals_[ni_++];
  }

  bool exhausted() const { return ii_ == indices_.size() && ui_ == units_.size() && ni_ == normals_.size(); }

 private:
  std::vector<std::size_t> indices_;
  std::vector<double> units_;
  std::vector<double> normals_;
  std::size_t ii_ = 0, ui_ = 0, ni_ = 0;
};

}  // namespace ineq::testing

#endif  // INEQ_TESTS_TRANSCRIPT_HPP
