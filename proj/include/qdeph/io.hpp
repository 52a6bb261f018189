#pragma once

#include <string>

#include "qdeph/model.hpp"

namespace qdeph {

// Model file format: {"n": int, "c_re": [[...]], "c_im": [[...]], "h": [[...]]},
// row-major, qubit indices 0..n-1.
DephasingModel read_model(const std::string& path);
void write_model(const DephasingModel& m, const std::string& path);

std::string model_to_json(const DephasingModel& m);
DephasingModel model_from_json(const std::string& text);

// 17 significant digits, enough to round-trip any double.
std::string format_double(double v);

}  // namespace qdeph
