#include "loom/rational.hpp"

#include "loom/error.hpp"

namespace loom {

std::string rational_to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_string(const std::string& s) {
    if (s.empty()) throw invalid_input_error("empty rational literal");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw invalid_input_error("bad rational literal: " + s);
    if (q.get_den() == 0) throw invalid_input_error("zero denominator: " + s);
    q.canonicalize();
    return q;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

} // namespace loom
