#pragma once

#include <stdexcept>
#include <string>

namespace qnetsim {

// Reason codes for every recoverable failure the library reports. Tests match
// on the code, messages are for humans.
enum class errc {
  invalid_parameter,
  not_physically_adjacent,
  empty_neighborhood,
  not_adjacent_edges,
  duplicate_target_edge,
  degenerate_swap,
  degenerate_request,
  out_of_order_step,
  insufficient_data,
  insufficient_points,
  no_convergence,
  parse_error,
  validation_error,
  io_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_parameter: return "invalid_parameter";
    case errc::not_physically_adjacent: return "not_physically_adjacent";
    case errc::empty_neighborhood: return "empty_neighborhood";
    case errc::not_adjacent_edges: return "not_adjacent_edges";
    case errc::duplicate_target_edge: return "duplicate_target_edge";
    case errc::degenerate_swap: return "degenerate_swap";
    case errc::degenerate_request: return "degenerate_request";
    case errc::out_of_order_step: return "out_of_order_step";
    case errc::insufficient_data: return "insufficient_data";
    case errc::insufficient_points: return "insufficient_points";
    case errc::no_convergence: return "no_convergence";
    case errc::parse_error: return "parse_error";
    case errc::validation_error: return "validation_error";
    case errc::io_error: return "io_error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace qnetsim
