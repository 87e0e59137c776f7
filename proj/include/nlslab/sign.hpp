#pragma once

#include <string>

namespace nlslab {

// Sign of the nonlinearity in i u_t + Laplacian u = sign |u|^{4/d} u.
enum class Sign : int { Focusing = -1, Defocusing = 1 };

inline int to_int(Sign s) { return static_cast<int>(s); }
inline const char* to_string(Sign s) { return s == Sign::Defocusing ? "defocusing" : "focusing"; }
Sign parse_sign(const std::string& s);

}  // namespace nlslab
