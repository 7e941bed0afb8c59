#pragma once

#include <stdexcept>
#include <string>

namespace loom {

// Exit-code families used by the CLI. Library code throws; the CLI maps
// what() plus this code onto its process exit status.
enum class errc {
    invalid_input = 2,
    precision_exhausted = 3,
    not_invertible = 4,
    ambiguous_snap = 5,
};

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

struct empty_window_error : error {
    explicit empty_window_error(const std::string& w = "empty coefficient window")
        : error(errc::invalid_input, w) {}
};

struct not_a_unit_error : error {
    explicit not_a_unit_error(const std::string& w = "series is not a unit")
        : error(errc::not_invertible, w) {}
};

struct indeterminate_order_error : error {
    explicit indeterminate_order_error(const std::string& w = "order not determined by window")
        : error(errc::precision_exhausted, w) {}
};

struct precision_exhausted_error : error {
    explicit precision_exhausted_error(const std::string& w = "precision exhausted")
        : error(errc::precision_exhausted, w) {}
};

struct not_invertible_error : error {
    explicit not_invertible_error(const std::string& w = "matrix not invertible")
        : error(errc::not_invertible, w) {}
};

struct unsupported_rank_error : error {
    explicit unsupported_rank_error(const std::string& w = "rank outside supported range")
        : error(errc::invalid_input, w) {}
};

struct not_in_big_cell_error : error {
    explicit not_in_big_cell_error(const std::string& w = "element not in the big cell")
        : error(errc::not_invertible, w) {}
};

struct window_too_small_error : error {
    explicit window_too_small_error(const std::string& w = "window too small")
        : error(errc::precision_exhausted, w) {}
};

struct unstable_trace_error : error {
    explicit unstable_trace_error(const std::string& w = "trace failed stability certificate")
        : error(errc::precision_exhausted, w) {}
};

struct ambiguous_snap_error : error {
    explicit ambiguous_snap_error(const std::string& w = "interval does not certify a unique integer")
        : error(errc::ambiguous_snap, w) {}
};

struct length_mismatch_error : error {
    explicit length_mismatch_error(const std::string& w = "length mismatch")
        : error(errc::invalid_input, w) {}
};

struct sum_mismatch_error : error {
    explicit sum_mismatch_error(const std::string& w = "sum mismatch")
        : error(errc::invalid_input, w) {}
};

struct degree_too_high_error : error {
    explicit degree_too_high_error(const std::string& w = "entry degree exceeds stated bound")
        : error(errc::invalid_input, w) {}
};

struct invalid_weight_error : error {
    explicit invalid_weight_error(const std::string& w = "not a valid level-c dominant weight")
        : error(errc::invalid_input, w) {}
};

struct degree_out_of_range_error : error {
    explicit degree_out_of_range_error(const std::string& w = "degree out of range")
        : error(errc::invalid_input, w) {}
};

struct unsupported_range_error : error {
    explicit unsupported_range_error(const std::string& w = "parameters outside supported range")
        : error(errc::invalid_input, w) {}
};

struct not_in_stabilizer_error : error {
    explicit not_in_stabilizer_error(const std::string& w = "element does not stabilize O^r")
        : error(errc::invalid_input, w) {}
};

struct invalid_input_error : error {
    explicit invalid_input_error(const std::string& w = "invalid input")
        : error(errc::invalid_input, w) {}
};

} // namespace loom
