#pragma once

#include "fdlsr/dataset.hpp"
#include "fdlsr/eval.hpp"

#include <string>
#include <vector>

namespace fdlsr {

/// Self-describing binary container: magic string, format version, then
/// tagged sections. Writes are byte-stable for identical contents and
/// round-trip bit-exactly.
struct ModelFile {
    Method method = Method::fdlsr;
    SolverConfig config;
    Normalizer normalizer;
    std::vector<std::string> label_names;
    Eigen::MatrixXd Q;
};

void save_model(const ModelFile& model, const std::string& path);
ModelFile load_model(const std::string& path);

}  // namespace fdlsr
