#pragma once

#include <stdexcept>
#include <string>

namespace divlab {

// Exit codes used by the CLI; library errors map onto them.
enum class ExitCode : int {
  Ok = 0,
  Resonance = 2,
  BandOverflow = 3,
  ScheduleFailure = 4,
  ConfigError = 5,
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class OrderError : public Error {
 public:
  using Error::Error;
};

// A cohomological divisor fell below the resonance threshold.
class ResonanceError : public Error {
 public:
  ResonanceError(const std::string& what, long n, long j, double divisor)
      : Error(what), n_(n), j_(j), divisor_(divisor) {}
  long taylor_level() const { return n_; }
  long fourier_mode() const { return j_; }
  double divisor() const { return divisor_; }

 private:
  long n_;
  long j_;
  double divisor_;
};

class BandOverflowError : public Error {
 public:
  BandOverflowError(const std::string& what, int required_band)
      : Error(what), required_band_(required_band) {}
  int required_band() const { return required_band_; }

 private:
  int required_band_;
};

class ScheduleError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace divlab
