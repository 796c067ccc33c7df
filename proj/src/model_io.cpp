#include "fdlsr/model_io.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace fdlsr {

namespace {

// Container layout, all integers little-endian:
//   "FDLSRMDL" | u32 version | u32 section count | sections
// each section: 4-byte tag | u64 payload length | payload.
constexpr char kMagic[8] = {'F', 'D', 'L', 'S', 'R', 'M', 'D', 'L'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f64(std::string& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    put_u64(out, bits);
}

void put_matrix(std::string& out, const Eigen::MatrixXd& m) {
    put_u64(out, static_cast<std::uint64_t>(m.rows()));
    put_u64(out, static_cast<std::uint64_t>(m.cols()));
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) put_f64(out, m(i, j));
}

void put_section(std::string& out, const char tag[4], const std::string& payload) {
    out.append(tag, 4);
    put_u64(out, payload.size());
    out += payload;
}

class Reader {
  public:
    explicit Reader(std::string data) : data_(std::move(data)) {}

    std::uint32_t u32() {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(byte()) << (8 * i);
        return v;
    }

    std::uint64_t u64() {
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(byte()) << (8 * i);
        return v;
    }

    double f64() {
        const std::uint64_t bits = u64();
        double v;
        std::memcpy(&v, &bits, sizeof v);
        return v;
    }

    std::string bytes(std::size_t n) {
        if (pos_ + n > data_.size()) throw std::runtime_error("model file truncated");
        std::string out = data_.substr(pos_, n);
        pos_ += n;
        return out;
    }

    Eigen::MatrixXd matrix() {
        const auto rows = static_cast<Eigen::Index>(u64());
        const auto cols = static_cast<Eigen::Index>(u64());
        if (rows < 0 || cols < 0 ||
            static_cast<std::uint64_t>(rows) * static_cast<std::uint64_t>(cols) * 8 >
                data_.size())
            throw std::runtime_error("model file declares oversized matrix");
        Eigen::MatrixXd m(rows, cols);
        for (Eigen::Index j = 0; j < cols; ++j)
            for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = f64();
        return m;
    }

    bool exhausted() const { return pos_ == data_.size(); }

  private:
    std::uint8_t byte() {
        if (pos_ >= data_.size()) throw std::runtime_error("model file truncated");
        return static_cast<std::uint8_t>(data_[pos_++]);
    }

    std::string data_;
    std::size_t pos_ = 0;
};

}  // namespace

void save_model(const ModelFile& model, const std::string& path) {
    std::string meth;
    put_u32(meth, static_cast<std::uint32_t>(model.method));

    std::string conf;
    put_f64(conf, model.config.alpha);
    put_f64(conf, model.config.beta);
    put_f64(conf, model.config.lambda);
    put_u32(conf, static_cast<std::uint32_t>(model.config.max_iter));
    put_f64(conf, model.config.tol);
    put_u32(conf, model.config.report_iter ? 1 : 0);
    put_u32(conf, model.config.report_iter ? static_cast<std::uint32_t>(*model.config.report_iter)
                                           : 0);

    std::string norm;
    put_u32(norm, static_cast<std::uint32_t>(model.normalizer.scheme));
    put_matrix(norm, model.normalizer.mean);
    put_matrix(norm, model.normalizer.scale);

    std::string labl;
    put_u64(labl, model.label_names.size());
    for (const std::string& name : model.label_names) {
        put_u64(labl, name.size());
        labl += name;
    }

    std::string proj;
    put_matrix(proj, model.Q);

    std::string out;
    out.append(kMagic, sizeof kMagic);
    put_u32(out, kVersion);
    put_u32(out, 5);
    put_section(out, "METH", meth);
    put_section(out, "CONF", conf);
    put_section(out, "NORM", norm);
    put_section(out, "LABL", labl);
    put_section(out, "PROJ", proj);

    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot write '" + path + "'");
    file.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!file) throw std::runtime_error("write to '" + path + "' failed");
}

ModelFile load_model(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "'");
    std::string data((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());

    Reader reader(std::move(data));
    if (reader.bytes(sizeof kMagic) != std::string(kMagic, sizeof kMagic))
        throw std::runtime_error("'" + path + "' is not a model file");
    const std::uint32_t version = reader.u32();
    if (version != kVersion)
        throw std::runtime_error("unsupported model file version " + std::to_string(version));

    ModelFile model;
    bool meth = false, conf = false, norm = false, labl = false, proj = false;
    const std::uint32_t sections = reader.u32();
    for (std::uint32_t s = 0; s < sections; ++s) {
        const std::string tag = reader.bytes(4);
        const std::uint64_t length = reader.u64();
        Reader payload(reader.bytes(length));
        if (tag == "METH") {
            const std::uint32_t m = payload.u32();
            if (m > 2) throw std::runtime_error("model file has unknown method id");
            model.method = static_cast<Method>(m);
            meth = true;
        } else if (tag == "CONF") {
            model.config.alpha = payload.f64();
            model.config.beta = payload.f64();
            model.config.lambda = payload.f64();
            model.config.max_iter = static_cast<int>(payload.u32());
            model.config.tol = payload.f64();
            const bool has_report = payload.u32() != 0;
            const std::uint32_t report = payload.u32();
            if (has_report) model.config.report_iter = static_cast<int>(report);
            conf = true;
        } else if (tag == "NORM") {
            const std::uint32_t scheme = payload.u32();
            if (scheme > 2) throw std::runtime_error("model file has unknown normalization id");
            model.normalizer.scheme = static_cast<NormScheme>(scheme);
            model.normalizer.mean = payload.matrix();
            model.normalizer.scale = payload.matrix();
            norm = true;
        } else if (tag == "LABL") {
            const std::uint64_t count = payload.u64();
            model.label_names.clear();
            for (std::uint64_t i = 0; i < count; ++i)
                model.label_names.push_back(payload.bytes(payload.u64()));
            labl = true;
        } else if (tag == "PROJ") {
            model.Q = payload.matrix();
            proj = true;
        } else {
            throw std::runtime_error("model file has unknown section '" + tag + "'");
        }
        if (!payload.exhausted())
            throw std::runtime_error("model file section '" + tag + "' has trailing bytes");
    }
    if (!(meth && conf && norm && labl && proj))
        throw std::runtime_error("model file is missing required sections");
    if (!reader.exhausted()) throw std::runtime_error("model file has trailing bytes");
    return model;
}

}  // namespace fdlsr
