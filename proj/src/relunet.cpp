#include "opnet/relunet.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace opnet::relu {

ReluNetwork::ReluNetwork(std::vector<Layer> layers) : layers_(std::move(layers)) {
    if (layers_.empty()) throw InputError("ReluNetwork: need at least one layer");
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const Layer& layer = layers_[l];
        if (layer.rows == 0 || layer.cols == 0) throw InputError("ReluNetwork: empty layer");
        if (layer.bias.size() != layer.rows) throw InputError("ReluNetwork: bias size mismatch");
        for (const auto& e : layer.weights) {
            if (e.row >= layer.rows || e.col >= layer.cols) {
                throw InputError("ReluNetwork: weight index out of range");
            }
        }
        if (l > 0 && layers_[l - 1].rows != layer.cols) {
            throw InputError("ReluNetwork: consecutive layer dimensions incompatible");
        }
    }
}

std::size_t ReluNetwork::width() const {
    std::size_t w = 0;
    for (std::size_t l = 0; l + 1 < layers_.size(); ++l) w = std::max(w, layers_[l].rows);
    return w;
}

std::size_t ReluNetwork::size() const {
    std::size_t count = 0;
    for (const Layer& layer : layers_) {
        for (const auto& e : layer.weights) {
            if (e.value != 0.0) ++count;
        }
        for (double b : layer.bias) {
            if (b != 0.0) ++count;
        }
    }
    return count;
}

std::vector<double> ReluNetwork::evaluate_batch(const std::vector<double>& inputs,
                                                std::size_t batch) const {
    if (inputs.size() != batch * input_dim()) {
        throw InputError("ReluNetwork: input length does not match first layer");
    }
    std::vector<double> cur(inputs);
    std::vector<double> next;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const Layer& layer = layers_[l];
        next.assign(batch * layer.rows, 0.0);
        for (std::size_t item = 0; item < batch; ++item) {
            double* out = next.data() + item * layer.rows;
            const double* in = cur.data() + item * layer.cols;
            for (std::size_t r = 0; r < layer.rows; ++r) out[r] = layer.bias[r];
            for (const auto& e : layer.weights) out[e.row] += e.value * in[e.col];
        }
        const bool hidden = (l + 1 < layers_.size());
        for (double& v : next) {
            if (!std::isfinite(v)) {
                throw NumericalError("ReluNetwork: non-finite intermediate value");
            }
            if (hidden && v < 0.0) v = 0.0;
        }
        cur.swap(next);
    }
    return cur;
}

std::vector<double> ReluNetwork::evaluate(const std::vector<double>& input) const {
    return evaluate_batch(input, 1);
}

double ReluNetwork::evaluate_scalar(double x) const { return evaluate({x})[0]; }

double ReluNetwork::evaluate_scalar(const std::vector<double>& input) const {
    return evaluate(input)[0];
}

ReluNetwork affine_network(std::size_t rows, std::size_t cols, std::vector<SparseEntry> weights,
                           std::vector<double> bias) {
    Layer layer;
    layer.rows = rows;
    layer.cols = cols;
    layer.weights = std::move(weights);
    layer.bias = std::move(bias);
    if (layer.bias.empty()) layer.bias.assign(rows, 0.0);
    return ReluNetwork({std::move(layer)});
}

ReluNetwork identity_network(std::size_t dim) {
    Layer hidden;
    hidden.rows = 2 * dim;
    hidden.cols = dim;
    hidden.bias.assign(2 * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        hidden.weights.push_back({i, i, 1.0});
        hidden.weights.push_back({dim + i, i, -1.0});
    }
    Layer out;
    out.rows = dim;
    out.cols = 2 * dim;
    out.bias.assign(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        out.weights.push_back({i, i, 1.0});
        out.weights.push_back({i, dim + i, -1.0});
    }
    return ReluNetwork({std::move(hidden), std::move(out)});
}

namespace {

Layer fuse(const Layer& outer, const Layer& inner) {
    if (outer.cols != inner.rows) throw InputError("compose: dimension mismatch");
    // column-indexed view of inner for the sparse product
    std::map<std::pair<std::size_t, std::size_t>, double> acc;
    std::vector<std::vector<std::pair<std::size_t, double>>> inner_rows(inner.rows);
    for (const auto& e : inner.weights) inner_rows[e.row].emplace_back(e.col, e.value);
    for (const auto& eo : outer.weights) {
        for (const auto& [c, v] : inner_rows[eo.col]) {
            acc[{eo.row, c}] += eo.value * v;
        }
    }
    Layer fused;
    fused.rows = outer.rows;
    fused.cols = inner.cols;
    fused.bias = outer.bias;
    for (const auto& eo : outer.weights) {
        fused.bias[eo.row] += eo.value * inner.bias[eo.col];
    }
    for (const auto& [rc, v] : acc) {
        if (v != 0.0) fused.weights.push_back({rc.first, rc.second, v});
    }
    return fused;
}

}  // namespace

ReluNetwork compose(const ReluNetwork& outer, const ReluNetwork& inner) {
    std::vector<Layer> layers(inner.layers().begin(), inner.layers().end() - 1);
    layers.push_back(fuse(outer.layers().front(), inner.layers().back()));
    layers.insert(layers.end(), outer.layers().begin() + 1, outer.layers().end());
    return ReluNetwork(std::move(layers));
}

ReluNetwork pad_to_depth(const ReluNetwork& net, std::size_t target_depth) {
    if (net.depth() > target_depth) throw InputError("pad_to_depth: already deeper than target");
    ReluNetwork out = net;
    while (out.depth() < target_depth) {
        out = compose(identity_network(out.output_dim()), out);
    }
    return out;
}

ReluNetwork parallel(const std::vector<ReluNetwork>& nets,
                     const std::vector<std::vector<std::size_t>>& input_map,
                     std::size_t total_inputs) {
    if (nets.empty() || nets.size() != input_map.size()) {
        throw InputError("parallel: need one input map per network");
    }
    std::size_t depth = 0;
    for (const auto& n : nets) depth = std::max(depth, n.depth());
    std::vector<ReluNetwork> padded;
    padded.reserve(nets.size());
    for (std::size_t i = 0; i < nets.size(); ++i) {
        if (input_map[i].size() != nets[i].input_dim()) {
            throw InputError("parallel: input map size mismatch");
        }
        padded.push_back(pad_to_depth(nets[i], depth));
    }
    const std::size_t num_layers = depth + 1;
    std::vector<Layer> layers(num_layers);
    for (std::size_t l = 0; l < num_layers; ++l) {
        Layer& layer = layers[l];
        std::size_t row_off = 0, col_off = 0;
        for (std::size_t i = 0; i < padded.size(); ++i) {
            const Layer& part = padded[i].layers()[l];
            for (const auto& e : part.weights) {
                std::size_t col = (l == 0) ? input_map[i][e.col] : col_off + e.col;
                layer.weights.push_back({row_off + e.row, col, e.value});
            }
            layer.bias.insert(layer.bias.end(), part.bias.begin(), part.bias.end());
            row_off += part.rows;
            col_off += part.cols;
        }
        layer.rows = row_off;
        layer.cols = (l == 0) ? total_inputs : layers[l - 1].rows;
    }
    return ReluNetwork(std::move(layers));
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void serialize(const ReluNetwork& net, std::ostream& out) {
    out << "relu-net v1 " << net.layers().size() << "\n";
    for (const Layer& layer : net.layers()) {
        std::size_t nnz = 0;
        for (const auto& e : layer.weights) {
            if (e.value != 0.0) ++nnz;
        }
        out << "layer " << layer.rows << " " << layer.cols << " " << nnz << "\n";
        for (const auto& e : layer.weights) {
            if (e.value == 0.0) continue;
            out << e.row << " " << e.col << " " << format_double(e.value) << "\n";
        }
        out << "b";
        for (double b : layer.bias) out << " " << format_double(b);
        out << "\n";
    }
}

ReluNetwork deserialize(std::istream& in) {
    std::string tag, version;
    std::size_t num_layers = 0;
    in >> tag >> version >> num_layers;
    if (tag != "relu-net" || version != "v1" || !in) {
        throw InputError("deserialize: bad relu-net header");
    }
    std::vector<Layer> layers(num_layers);
    for (std::size_t l = 0; l < num_layers; ++l) {
        std::string kw;
        Layer& layer = layers[l];
        std::size_t nnz = 0;
        in >> kw >> layer.rows >> layer.cols >> nnz;
        if (kw != "layer" || !in) throw InputError("deserialize: bad layer header");
        layer.weights.resize(nnz);
        for (std::size_t e = 0; e < nnz; ++e) {
            std::string w;
            in >> layer.weights[e].row >> layer.weights[e].col >> w;
            double value = 0.0;
            auto res = std::from_chars(w.data(), w.data() + w.size(), value);
            if (res.ec != std::errc()) throw InputError("deserialize: bad weight value");
            layer.weights[e].value = value;
        }
        in >> kw;
        if (kw != "b") throw InputError("deserialize: missing bias line");
        layer.bias.resize(layer.rows);
        for (std::size_t r = 0; r < layer.rows; ++r) {
            std::string w;
            in >> w;
            double value = 0.0;
            auto res = std::from_chars(w.data(), w.data() + w.size(), value);
            if (res.ec != std::errc()) throw InputError("deserialize: bad bias value");
            layer.bias[r] = value;
        }
    }
    return ReluNetwork(std::move(layers));
}

std::string to_string(const ReluNetwork& net) {
    std::ostringstream out;
    serialize(net, out);
    return out.str();
}

ReluNetwork from_string(const std::string& text) {
    std::istringstream in(text);
    return deserialize(in);
}

}  // namespace opnet::relu
