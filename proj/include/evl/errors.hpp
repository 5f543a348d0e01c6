#pragma once

#include <stdexcept>
#include <string>

namespace evl {

/// Invalid parameters, e.g. δ outside (0,1) or more folds than episodes.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A fact arrived for a time point already emitted by the windower.
class StreamOrderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace evl
