#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "opnet/common.hpp"

namespace opnet::relu {

struct SparseEntry {
    std::size_t row = 0;
    std::size_t col = 0;
    double value = 0.0;
};

/// One affine map z = W x + b with sparse W.
struct Layer {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<SparseEntry> weights;
    std::vector<double> bias;
};

/// Layered affine+ReLU computation graph: ReLU follows every layer except
/// the last, which stays affine. Evaluation is exact piecewise-linear
/// arithmetic; networks are immutable after construction and safe to share.
class ReluNetwork {
public:
    explicit ReluNetwork(std::vector<Layer> layers);

    std::size_t input_dim() const { return layers_.front().cols; }
    std::size_t output_dim() const { return layers_.back().rows; }
    std::size_t depth() const { return layers_.size() - 1; }  // hidden layers
    std::size_t width() const;                                // max hidden layer size
    std::size_t size() const;                                 // nonzero parameters
    const std::vector<Layer>& layers() const { return layers_; }

    std::vector<double> evaluate(const std::vector<double>& input) const;
    double evaluate_scalar(double x) const;
    double evaluate_scalar(const std::vector<double>& input) const;

    /// Forward pass over `batch` inputs stored contiguously per item.
    std::vector<double> evaluate_batch(const std::vector<double>& inputs,
                                       std::size_t batch) const;

private:
    std::vector<Layer> layers_;
};

/// Single affine layer as a (depth-0) network.
ReluNetwork affine_network(std::size_t rows, std::size_t cols, std::vector<SparseEntry> weights,
                           std::vector<double> bias);
ReluNetwork identity_network(std::size_t dim);  // z = ReLU(z) - ReLU(-z), depth 1

/// outer(inner(x)): inner's output layer fuses with outer's input layer so
/// the activation pattern stays layerwise-ReLU.
ReluNetwork compose(const ReluNetwork& outer, const ReluNetwork& inner);

/// Appends exact-identity hidden layers until the network has target depth.
ReluNetwork pad_to_depth(const ReluNetwork& net, std::size_t target_depth);

/// Runs nets side by side on a shared input vector; branch i reads the
/// input coordinates listed in input_map[i] and outputs are concatenated.
/// Branches of unequal depth are identity-padded to the deepest.
ReluNetwork parallel(const std::vector<ReluNetwork>& nets,
                     const std::vector<std::vector<std::size_t>>& input_map,
                     std::size_t total_inputs);

/// Plain-text serialization, bit-exact round trip (shortest round-trip
/// decimal floats):
///   relu-net v1 <num_layers>
///   layer <rows> <cols> <nnz>
///   <i> <j> <w>          (nnz lines)
///   b <v_0> ... <v_{rows-1}>
void serialize(const ReluNetwork& net, std::ostream& out);
ReluNetwork deserialize(std::istream& in);
std::string to_string(const ReluNetwork& net);
ReluNetwork from_string(const std::string& text);

/// Shortest decimal that round-trips to the same binary64 value.
std::string format_double(double v);

}  // namespace opnet::relu
