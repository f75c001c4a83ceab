#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "csit/errors.hpp"
#include "csit/rng.hpp"

// Minimal 1D neural-network kernels: convolution, max pooling, nearest
// neighbor upsampling, dense layers, backpropagation and Adam. Everything is
// templated on the scalar type; training runs in float, while tests can
// instantiate double to compare gradients against finite differences without
// drowning in rounding noise.
namespace csit::nn {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

enum class Activation { None, ReLU, Sigmoid };

// A batch of B activation maps. `data` has `channels` rows and
// `batch * length` columns; frame b occupies columns [b*length, (b+1)*length).
template <class Scalar>
struct Tensor2 {
    int channels = 0;
    int length = 0;
    int batch = 1;
    Matrix<Scalar> data;

    static Tensor2 zero(int channels, int length, int batch = 1) {
        return {channels, length, batch, Matrix<Scalar>::Zero(channels, std::ptrdiff_t(batch) * length)};
    }

    // Single frame from a flat vector, one channel.
    static Tensor2 from_vector(const Vector<Scalar>& v) {
        Tensor2 t{1, static_cast<int>(v.size()), 1, {}};
        t.data = v.transpose();
        return t;
    }

    bool shape_ok() const {
        return data.rows() == channels && data.cols() == std::ptrdiff_t(batch) * length;
    }
};

template <class Scalar>
struct ConvLayer {
    int filters = 0;
    int kernel_len = 0;
    int in_channels = 0;
    // Row f holds filter f; column l*in_channels + c is weight (f, c, l).
    // Tap-major columns keep im2col copies contiguous.
    Matrix<Scalar> weights;
    Vector<Scalar> bias;
    Activation activation = Activation::ReLU;
};

template <class Scalar>
struct DenseLayer {
    Matrix<Scalar> weights; // out x in
    Vector<Scalar> bias;    // out
    Activation activation = Activation::None;
};

struct PoolOp {
    int m = 2;
};

struct UpsampleOp {
    int m = 2;
    int target_len = 0;
};

struct FlattenOp {};

template <class Scalar>
using StackOp = std::variant<ConvLayer<Scalar>, PoolOp, UpsampleOp, FlattenOp, DenseLayer<Scalar>>;

// ---------------------------------------------------------------------------
// Activations

template <class Scalar>
void apply_activation(Matrix<Scalar>& x, Activation act) {
    switch (act) {
        case Activation::None:
            break;
        case Activation::ReLU:
            x = x.cwiseMax(Scalar(0));
            break;
        case Activation::Sigmoid:
            x = ((-x.array()).exp() + Scalar(1)).inverse().matrix();
            break;
    }
}

// d(pre-activation) from d(output), using the stored post-activation values.
template <class Scalar>
Matrix<Scalar> activation_backward(const Matrix<Scalar>& grad_out, const Matrix<Scalar>& out,
                                   Activation act) {
    switch (act) {
        case Activation::None:
            return grad_out;
        case Activation::ReLU:
            return (grad_out.array() * (out.array() > Scalar(0)).template cast<Scalar>()).matrix();
        case Activation::Sigmoid:
            return (grad_out.array() * out.array() * (Scalar(1) - out.array())).matrix();
    }
    return grad_out;
}

// ---------------------------------------------------------------------------
// Convolution (cross-correlation, stride 1, symmetric zero "same" padding)

inline int conv_pad_left(int kernel_len) { return (kernel_len - 1) / 2; }

template <class Scalar>
struct ConvCache {
    Matrix<Scalar> cols; // im2col patches, (in_channels*kernel_len) x (batch*length)
    Matrix<Scalar> out;  // post-activation output
};

namespace detail {

// Patch matrix: column (b*len + p) stacks the zero-padded input window around
// position p of frame b; rows are tap-major (tap l occupies rows
// [l*channels, (l+1)*channels)), so every copy below is a contiguous column
// segment.
template <class Scalar>
Matrix<Scalar> im2col(const Tensor2<Scalar>& in, int kernel_len) {
    const int pad_left = conv_pad_left(kernel_len);
    const int len = in.length;
    const int ch = in.channels;
    Matrix<Scalar> cols = Matrix<Scalar>::Zero(std::ptrdiff_t(ch) * kernel_len,
                                               std::ptrdiff_t(in.batch) * len);
    for (int b = 0; b < in.batch; ++b) {
        const std::ptrdiff_t base = std::ptrdiff_t(b) * len;
        for (int p = 0; p < len; ++p) {
            auto col = cols.col(base + p);
            const int l_lo = std::max(0, pad_left - p);
            const int l_hi = std::min(kernel_len, len + pad_left - p); // exclusive
            for (int l = l_lo; l < l_hi; ++l)
                col.segment(std::ptrdiff_t(l) * ch, ch) = in.data.col(base + p + l - pad_left);
        }
    }
    return cols;
}

// Adjoint of im2col: scatter column gradients back onto the input grid.
template <class Scalar>
Tensor2<Scalar> col2im(const Matrix<Scalar>& grad_cols, int channels, int length, int batch,
                       int kernel_len) {
    const int pad_left = conv_pad_left(kernel_len);
    Tensor2<Scalar> grad_in = Tensor2<Scalar>::zero(channels, length, batch);
    for (int b = 0; b < batch; ++b) {
        const std::ptrdiff_t base = std::ptrdiff_t(b) * length;
        for (int p = 0; p < length; ++p) {
            const auto col = grad_cols.col(base + p);
            const int l_lo = std::max(0, pad_left - p);
            const int l_hi = std::min(kernel_len, length + pad_left - p);
            for (int l = l_lo; l < l_hi; ++l)
                grad_in.data.col(base + p + l - pad_left) +=
                    col.segment(std::ptrdiff_t(l) * channels, channels);
        }
    }
    return grad_in;
}

} // namespace detail

template <class Scalar>
Tensor2<Scalar> conv1d_forward(const Tensor2<Scalar>& input, const ConvLayer<Scalar>& layer,
                               ConvCache<Scalar>* cache = nullptr) {
    if (input.channels != layer.in_channels)
        throw ShapeError("conv1d: input has " + std::to_string(input.channels) +
                         " channels, layer expects " + std::to_string(layer.in_channels));
    if (layer.weights.rows() != layer.filters ||
        layer.weights.cols() != std::ptrdiff_t(layer.in_channels) * layer.kernel_len ||
        layer.bias.size() != layer.filters)
        throw ShapeError("conv1d: layer weight/bias shape inconsistent");

    Matrix<Scalar> cols = detail::im2col(input, layer.kernel_len);
    Tensor2<Scalar> out{layer.filters, input.length, input.batch, layer.weights * cols};
    out.data.colwise() += layer.bias;
    apply_activation(out.data, layer.activation);
    if (cache) {
        cache->cols = std::move(cols);
        cache->out = out.data;
    }
    return out;
}

template <class Scalar>
struct ConvGrads {
    Matrix<Scalar> weights;
    Vector<Scalar> bias;
};

// "Same" padding preserves length, so the conv input shape is implied by the
// output gradient and the layer itself.
template <class Scalar>
Tensor2<Scalar> conv1d_backward(const Tensor2<Scalar>& grad_out, const ConvLayer<Scalar>& layer,
                                const ConvCache<Scalar>& cache, ConvGrads<Scalar>& grads) {
    Matrix<Scalar> d_pre = activation_backward(grad_out.data, cache.out, layer.activation);
    grads.weights = d_pre * cache.cols.transpose();
    grads.bias = d_pre.rowwise().sum();
    Matrix<Scalar> grad_cols = layer.weights.transpose() * d_pre;
    return detail::col2im(grad_cols, layer.in_channels, grad_out.length, grad_out.batch,
                          layer.kernel_len);
}

// ---------------------------------------------------------------------------
// Max pooling (non-overlapping windows, trailing remainder dropped)

template <class Scalar>
struct PoolResult {
    Tensor2<Scalar> out;
    Eigen::MatrixXi argmax; // winning input column per output cell
};

template <class Scalar>
PoolResult<Scalar> maxpool1d(const Tensor2<Scalar>& input, int m) {
    if (m <= 0) throw DomainError("maxpool1d: m must be >= 1");
    const int out_len = input.length / m;
    if (out_len < 1) throw ShapeError("maxpool1d: window larger than input length");

    PoolResult<Scalar> res;
    res.out = Tensor2<Scalar>::zero(input.channels, out_len, input.batch);
    res.argmax.resize(input.channels, std::ptrdiff_t(input.batch) * out_len);
    for (int b = 0; b < input.batch; ++b) {
        const int in_base = b * input.length;
        const int out_base = b * out_len;
        for (int po = 0; po < out_len; ++po) {
            for (int c = 0; c < input.channels; ++c) {
                int best = in_base + po * m;
                Scalar best_v = input.data(c, best);
                for (int k = 1; k < m; ++k) {
                    const int idx = in_base + po * m + k;
                    if (input.data(c, idx) > best_v) {
                        best_v = input.data(c, idx);
                        best = idx;
                    }
                }
                res.out.data(c, out_base + po) = best_v;
                res.argmax(c, out_base + po) = best;
            }
        }
    }
    return res;
}

template <class Scalar>
Tensor2<Scalar> maxpool1d_backward(const Tensor2<Scalar>& grad_out, const Eigen::MatrixXi& argmax,
                                   int in_channels, int in_length, int batch) {
    Tensor2<Scalar> grad_in = Tensor2<Scalar>::zero(in_channels, in_length, batch);
    for (std::ptrdiff_t j = 0; j < grad_out.data.cols(); ++j)
        for (int c = 0; c < in_channels; ++c)
            grad_in.data(c, argmax(c, j)) += grad_out.data(c, j);
    return grad_in;
}

// ---------------------------------------------------------------------------
// Nearest-neighbor upsampling
//
// out[p] = in[min(p / m, length-1)], truncated or last-value-extended to
// target_len. Targets within m-1 of length*m on either side are accepted so
// the decoder can rebuild pre-pool lengths that the floor rule collapsed.

template <class Scalar>
Tensor2<Scalar> upsample1d(const Tensor2<Scalar>& input, int m, int target_len) {
    if (m <= 0) throw DomainError("upsample1d: m must be >= 1");
    const int lo = input.length * m - (m - 1);
    const int hi = input.length * m + (m - 1);
    if (target_len < lo || target_len > hi)
        throw ShapeError("upsample1d: target_len " + std::to_string(target_len) +
                         " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");

    Tensor2<Scalar> out = Tensor2<Scalar>::zero(input.channels, target_len, input.batch);
    for (int b = 0; b < input.batch; ++b)
        for (int p = 0; p < target_len; ++p)
            out.data.col(std::ptrdiff_t(b) * target_len + p) =
                input.data.col(std::ptrdiff_t(b) * input.length + std::min(p / m, input.length - 1));
    return out;
}

template <class Scalar>
Tensor2<Scalar> upsample1d_backward(const Tensor2<Scalar>& grad_out, int m, int in_length, int batch) {
    Tensor2<Scalar> grad_in = Tensor2<Scalar>::zero(grad_out.channels, in_length, batch);
    for (int b = 0; b < batch; ++b)
        for (int p = 0; p < grad_out.length; ++p)
            grad_in.data.col(std::ptrdiff_t(b) * in_length + std::min(p / m, in_length - 1)) +=
                grad_out.data.col(std::ptrdiff_t(b) * grad_out.length + p);
    return grad_in;
}

// ---------------------------------------------------------------------------
// Dense layer

template <class Scalar>
struct DenseCache {
    Matrix<Scalar> in;
    Matrix<Scalar> out;
};

// Batched form: columns of `input` are flattened frames.
template <class Scalar>
Matrix<Scalar> dense_forward(const Matrix<Scalar>& input, const DenseLayer<Scalar>& layer,
                             DenseCache<Scalar>* cache = nullptr) {
    if (layer.weights.cols() != input.rows() || layer.bias.size() != layer.weights.rows())
        throw ShapeError("dense: weight shape " + std::to_string(layer.weights.rows()) + "x" +
                         std::to_string(layer.weights.cols()) + " does not accept input of size " +
                         std::to_string(input.rows()));
    Matrix<Scalar> out = layer.weights * input;
    out.colwise() += layer.bias;
    apply_activation(out, layer.activation);
    if (cache) {
        cache->in = input;
        cache->out = out;
    }
    return out;
}

// Single-vector convenience used by the spec-level API and tests.
template <class Scalar>
Vector<Scalar> dense_forward(const Vector<Scalar>& input, const Matrix<Scalar>& weights,
                             const Vector<Scalar>& bias, Activation act) {
    DenseLayer<Scalar> layer{weights, bias, act};
    return dense_forward(Matrix<Scalar>(input), layer);
}

template <class Scalar>
struct DenseGrads {
    Matrix<Scalar> weights;
    Vector<Scalar> bias;
};

template <class Scalar>
Matrix<Scalar> dense_backward(const Matrix<Scalar>& grad_out, const DenseLayer<Scalar>& layer,
                              const DenseCache<Scalar>& cache, DenseGrads<Scalar>& grads) {
    Matrix<Scalar> d_pre = activation_backward(grad_out, cache.out, layer.activation);
    grads.weights = d_pre * cache.in.transpose();
    grads.bias = d_pre.rowwise().sum();
    return layer.weights.transpose() * d_pre;
}

// ---------------------------------------------------------------------------
// Stack: an ordered pipeline of ops with full backpropagation

struct PoolCacheEntry {
    Eigen::MatrixXi argmax;
    int in_channels = 0;
    int in_length = 0;
    int batch = 1;
};

struct UpsampleCacheEntry {
    int in_length = 0;
    int batch = 1;
};

struct FlattenCacheEntry {
    int channels = 0;
    int length = 0;
    int batch = 1;
};

template <class Scalar>
using OpCache = std::variant<std::monostate, ConvCache<Scalar>, PoolCacheEntry, UpsampleCacheEntry,
                             FlattenCacheEntry, DenseCache<Scalar>>;

template <class Scalar>
struct StackCache {
    std::vector<OpCache<Scalar>> per_op;
    Tensor2<Scalar> input;  // shape bookkeeping for the first backward hop
    Tensor2<Scalar> output; // final activations
};

template <class Scalar>
using OpGrads = std::variant<std::monostate, ConvGrads<Scalar>, DenseGrads<Scalar>>;

template <class Scalar>
struct StackGrads {
    std::vector<OpGrads<Scalar>> per_op;
};

template <class Scalar>
struct Stack {
    std::vector<StackOp<Scalar>> ops;
};

namespace detail {

// Flatten keeps Eigen's column-major block order: element (c, p) of frame b
// lands at flat index p*channels + c of column b.
template <class Scalar>
Tensor2<Scalar> flatten(const Tensor2<Scalar>& in) {
    const int flat = in.channels * in.length;
    Tensor2<Scalar> out{flat, 1, in.batch, Matrix<Scalar>(flat, in.batch)};
    for (int b = 0; b < in.batch; ++b)
        out.data.col(b) =
            Eigen::Map<const Vector<Scalar>>(in.data.data() + std::ptrdiff_t(b) * flat, flat);
    return out;
}

template <class Scalar>
Tensor2<Scalar> unflatten(const Tensor2<Scalar>& grad, int channels, int length, int batch) {
    Tensor2<Scalar> out = Tensor2<Scalar>::zero(channels, length, batch);
    const int flat = channels * length;
    for (int b = 0; b < batch; ++b)
        Eigen::Map<Vector<Scalar>>(out.data.data() + std::ptrdiff_t(b) * flat, flat) = grad.data.col(b);
    return out;
}

} // namespace detail

template <class Scalar>
Tensor2<Scalar> forward(const Stack<Scalar>& stack, const Tensor2<Scalar>& input,
                        StackCache<Scalar>* cache = nullptr) {
    if (!input.shape_ok()) throw ShapeError("forward: tensor shape metadata inconsistent");
    if (cache) {
        cache->per_op.clear();
        cache->per_op.reserve(stack.ops.size());
        cache->input = Tensor2<Scalar>{input.channels, input.length, input.batch, {}};
    }
    Tensor2<Scalar> x = input;
    for (const auto& op : stack.ops) {
        x = std::visit(
            [&](const auto& o) -> Tensor2<Scalar> {
                using T = std::decay_t<decltype(o)>;
                if constexpr (std::is_same_v<T, ConvLayer<Scalar>>) {
                    ConvCache<Scalar> c;
                    Tensor2<Scalar> y = conv1d_forward(x, o, cache ? &c : nullptr);
                    if (cache) cache->per_op.emplace_back(std::move(c));
                    return y;
                } else if constexpr (std::is_same_v<T, PoolOp>) {
                    PoolResult<Scalar> r = maxpool1d(x, o.m);
                    if (cache)
                        cache->per_op.emplace_back(
                            PoolCacheEntry{std::move(r.argmax), x.channels, x.length, x.batch});
                    return std::move(r.out);
                } else if constexpr (std::is_same_v<T, UpsampleOp>) {
                    Tensor2<Scalar> y = upsample1d(x, o.m, o.target_len);
                    if (cache) cache->per_op.emplace_back(UpsampleCacheEntry{x.length, x.batch});
                    return y;
                } else if constexpr (std::is_same_v<T, FlattenOp>) {
                    Tensor2<Scalar> y = detail::flatten(x);
                    if (cache) cache->per_op.emplace_back(FlattenCacheEntry{x.channels, x.length, x.batch});
                    return y;
                } else {
                    static_assert(std::is_same_v<T, DenseLayer<Scalar>>);
                    if (x.length != 1)
                        throw ShapeError("dense layer expects flattened input (length 1)");
                    DenseCache<Scalar> c;
                    Matrix<Scalar> y = dense_forward(x.data, o, cache ? &c : nullptr);
                    if (cache) cache->per_op.emplace_back(std::move(c));
                    return Tensor2<Scalar>{static_cast<int>(y.rows()), 1, x.batch, std::move(y)};
                }
            },
            op);
    }
    if (cache) cache->output = x;
    return x;
}

// Mean squared error: per-frame mean over elements, then mean over the batch.
// Accumulated in double regardless of Scalar.
template <class Scalar>
double mse_loss(const Tensor2<Scalar>& output, const Tensor2<Scalar>& target) {
    if (output.data.rows() != target.data.rows() || output.data.cols() != target.data.cols())
        throw ShapeError("mse_loss: output/target shape mismatch");
    const double sq = (output.data.template cast<double>() - target.data.template cast<double>())
                          .squaredNorm();
    return sq / (double(output.channels) * output.length * output.batch);
}

// Gradients of mse_loss w.r.t. every weight and bias. The forward pass must
// have filled `cache`; a stale or empty cache raises StateError.
template <class Scalar>
StackGrads<Scalar> backward(const Stack<Scalar>& stack, const StackCache<Scalar>& cache,
                            const Tensor2<Scalar>& target) {
    if (cache.per_op.size() != stack.ops.size())
        throw StateError("backward: forward cache missing or stale");
    const auto& out = cache.output;
    if (out.data.rows() != target.data.rows() || out.data.cols() != target.data.cols())
        throw ShapeError("backward: target shape mismatch");

    StackGrads<Scalar> grads;
    grads.per_op.resize(stack.ops.size());

    const Scalar scale = Scalar(2) / (Scalar(out.channels) * Scalar(out.length) * Scalar(out.batch));
    Tensor2<Scalar> g{out.channels, out.length, out.batch, (out.data - target.data) * scale};

    for (std::size_t i = stack.ops.size(); i-- > 0;) {
        const auto& op = stack.ops[i];
        const auto& c = cache.per_op[i];
        g = std::visit(
            [&](const auto& o) -> Tensor2<Scalar> {
                using T = std::decay_t<decltype(o)>;
                if constexpr (std::is_same_v<T, ConvLayer<Scalar>>) {
                    const auto* cc = std::get_if<ConvCache<Scalar>>(&c);
                    if (!cc) throw StateError("backward: cache entry mismatch at conv layer");
                    ConvGrads<Scalar> cg;
                    Tensor2<Scalar> gi = conv1d_backward(g, o, *cc, cg);
                    grads.per_op[i] = std::move(cg);
                    return gi;
                } else if constexpr (std::is_same_v<T, PoolOp>) {
                    const auto* pc = std::get_if<PoolCacheEntry>(&c);
                    if (!pc) throw StateError("backward: cache entry mismatch at pool layer");
                    return maxpool1d_backward(g, pc->argmax, pc->in_channels, pc->in_length, pc->batch);
                } else if constexpr (std::is_same_v<T, UpsampleOp>) {
                    const auto* uc = std::get_if<UpsampleCacheEntry>(&c);
                    if (!uc) throw StateError("backward: cache entry mismatch at upsample layer");
                    return upsample1d_backward(g, o.m, uc->in_length, uc->batch);
                } else if constexpr (std::is_same_v<T, FlattenOp>) {
                    const auto* fc = std::get_if<FlattenCacheEntry>(&c);
                    if (!fc) throw StateError("backward: cache entry mismatch at flatten layer");
                    return detail::unflatten(g, fc->channels, fc->length, fc->batch);
                } else {
                    static_assert(std::is_same_v<T, DenseLayer<Scalar>>);
                    const auto* dc = std::get_if<DenseCache<Scalar>>(&c);
                    if (!dc) throw StateError("backward: cache entry mismatch at dense layer");
                    DenseGrads<Scalar> dg;
                    Matrix<Scalar> gi = dense_backward(g.data, o, *dc, dg);
                    grads.per_op[i] = std::move(dg);
                    return Tensor2<Scalar>{static_cast<int>(gi.rows()), 1, g.batch, std::move(gi)};
                }
            },
            op);
    }
    return grads;
}

// ---------------------------------------------------------------------------
// Parameter plumbing: canonical order is op order, weights before bias,
// each tensor in its storage order.

template <class Scalar, class Fn>
void for_each_param_tensor(Stack<Scalar>& stack, Fn&& fn) {
    for (auto& op : stack.ops)
        std::visit(
            [&](auto& o) {
                using T = std::decay_t<decltype(o)>;
                if constexpr (std::is_same_v<T, ConvLayer<Scalar>> || std::is_same_v<T, DenseLayer<Scalar>>) {
                    fn(o.weights.data(), o.weights.size());
                    fn(o.bias.data(), o.bias.size());
                }
            },
            op);
}

template <class Scalar, class Fn>
void for_each_grad_tensor(const StackGrads<Scalar>& grads, Fn&& fn) {
    for (const auto& og : grads.per_op)
        std::visit(
            [&](const auto& g) {
                using T = std::decay_t<decltype(g)>;
                if constexpr (!std::is_same_v<T, std::monostate>) {
                    fn(g.weights.data(), g.weights.size());
                    fn(g.bias.data(), g.bias.size());
                }
            },
            og);
}

template <class Scalar>
std::ptrdiff_t param_count(const Stack<Scalar>& stack) {
    std::ptrdiff_t n = 0;
    for_each_param_tensor(const_cast<Stack<Scalar>&>(stack),
                          [&](const Scalar*, std::ptrdiff_t size) { n += size; });
    return n;
}

template <class Scalar>
Vector<Scalar> gather_params(const Stack<Scalar>& stack) {
    Vector<Scalar> out(param_count(stack));
    std::ptrdiff_t at = 0;
    for_each_param_tensor(const_cast<Stack<Scalar>&>(stack), [&](const Scalar* p, std::ptrdiff_t size) {
        out.segment(at, size) = Eigen::Map<const Vector<Scalar>>(p, size);
        at += size;
    });
    return out;
}

template <class Scalar>
void scatter_params(Stack<Scalar>& stack, const Vector<Scalar>& params) {
    if (params.size() != param_count(stack)) throw ShapeError("scatter_params: size mismatch");
    std::ptrdiff_t at = 0;
    for_each_param_tensor(stack, [&](Scalar* p, std::ptrdiff_t size) {
        Eigen::Map<Vector<Scalar>>(p, size) = params.segment(at, size);
        at += size;
    });
}

template <class Scalar>
Vector<Scalar> gather_grads(const Stack<Scalar>& stack, const StackGrads<Scalar>& grads) {
    Vector<Scalar> out(param_count(stack));
    std::ptrdiff_t at = 0;
    for_each_grad_tensor(grads, [&](const Scalar* p, std::ptrdiff_t size) {
        out.segment(at, size) = Eigen::Map<const Vector<Scalar>>(p, size);
        at += size;
    });
    if (at != out.size()) throw ShapeError("gather_grads: gradient set incomplete");
    return out;
}

// ---------------------------------------------------------------------------
// Adam

template <class Scalar>
struct AdamState {
    Scalar lr = Scalar(0.001);
    Scalar beta1 = Scalar(0.9);
    Scalar beta2 = Scalar(0.999);
    Scalar epsilon = Scalar(1e-8);
    long t = 0;
    Vector<Scalar> m;
    Vector<Scalar> v;

    static AdamState for_size(std::ptrdiff_t n, Scalar lr = Scalar(0.001)) {
        AdamState s;
        s.lr = lr;
        s.m = Vector<Scalar>::Zero(n);
        s.v = Vector<Scalar>::Zero(n);
        return s;
    }
};

// One bias-corrected Adam step, in place.
template <class Scalar>
void adam_update(Eigen::Ref<Vector<Scalar>> params, const Eigen::Ref<const Vector<Scalar>>& grads,
                 AdamState<Scalar>& state) {
    if (params.size() != grads.size() || params.size() != state.m.size() ||
        params.size() != state.v.size())
        throw ShapeError("adam_update: parameter/gradient/moment sizes differ");
    state.t += 1;
    state.m = state.beta1 * state.m + (Scalar(1) - state.beta1) * grads;
    state.v = (state.beta2 * state.v.array() + (Scalar(1) - state.beta2) * grads.array().square()).matrix();
    const Scalar c1 = Scalar(1) - Scalar(std::pow(double(state.beta1), double(state.t)));
    const Scalar c2 = Scalar(1) - Scalar(std::pow(double(state.beta2), double(state.t)));
    params.array() -= state.lr * (state.m.array() / c1) / ((state.v.array() / c2).sqrt() + state.epsilon);
}

// ---------------------------------------------------------------------------
// Initialization (uniform +-sqrt(6/(fan_in+fan_out)), bias zero)

template <class Scalar>
ConvLayer<Scalar> make_conv(int filters, int kernel_len, int in_channels, Activation act, Rng& rng) {
    if (filters < 1 || kernel_len < 1 || in_channels < 1)
        throw ConfigError("make_conv: filters, kernel_len and in_channels must be >= 1");
    ConvLayer<Scalar> layer{filters, kernel_len, in_channels, {}, {}, act};
    const double fan_in = double(in_channels) * kernel_len;
    const double fan_out = double(filters) * kernel_len;
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    layer.weights.resize(filters, std::ptrdiff_t(in_channels) * kernel_len);
    for (std::ptrdiff_t i = 0; i < layer.weights.size(); ++i)
        layer.weights.data()[i] = Scalar(rng.uniform(-limit, limit));
    layer.bias = Vector<Scalar>::Zero(filters);
    return layer;
}

template <class Scalar>
DenseLayer<Scalar> make_dense(int out_dim, int in_dim, Activation act, Rng& rng) {
    if (out_dim < 1 || in_dim < 1) throw ConfigError("make_dense: dimensions must be >= 1");
    DenseLayer<Scalar> layer;
    layer.activation = act;
    const double limit = std::sqrt(6.0 / (double(in_dim) + double(out_dim)));
    layer.weights.resize(out_dim, in_dim);
    for (std::ptrdiff_t i = 0; i < layer.weights.size(); ++i)
        layer.weights.data()[i] = Scalar(rng.uniform(-limit, limit));
    layer.bias = Vector<Scalar>::Zero(out_dim);
    return layer;
}

} // namespace csit::nn
