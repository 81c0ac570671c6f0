#include "attnpath/logreg.hpp"

#include <algorithm>

namespace attnpath {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-20;
constexpr double kMaxStep = 1e12;
constexpr double kMinCurvature = 1e-300;

double clamp_open_unit(double p) {
    return std::clamp(p, std::numeric_limits<double>::min(), 1.0 - std::numeric_limits<double>::epsilon() / 2);
}

struct Direction {
    Eigen::VectorXd w;
    double b = 0.0;
    double slope = 0.0;  ///< gradient . direction, > 0
};

// Gradient scaled by the inverse Hessian diagonal. Plain gradient steps crawl
// when one coordinate's curvature vanishes, e.g. the bias on single-class
// data, whose optimum lies at infinity.
Direction preconditioned(const Eigen::MatrixXd& Xs, const Eigen::VectorXd& w, double b, double lambda,
                         const LogisticObjective<double>& obj) {
    const Eigen::Index n = Xs.rows();
    Eigen::VectorXd curv(n);
    const Eigen::VectorXd z = (Xs * w).array() + b;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double p = sigmoid(z(i));
        curv(i) = p * (1.0 - p);
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    const Eigen::VectorXd hw = ((Xs.array().square().colwise() * curv.array()).colwise().sum().transpose() * inv_n +
                                lambda)
                                   .max(kMinCurvature);
    const double hb = std::max(curv.sum() * inv_n, kMinCurvature);
    Direction d;
    d.w = obj.grad_w.cwiseQuotient(hw);
    d.b = obj.grad_b / hb;
    d.slope = obj.grad_w.dot(d.w) + obj.grad_b * d.b;
    return d;
}

}  // namespace

LogRegModel train_logreg(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const TrainOptions& options) {
    if (X.rows() != y.size()) throw ValidationError("train_logreg: X and y disagree on row count");
    if (!X.allFinite() || !y.allFinite()) throw ValidationError("train_logreg: non-finite input");
    if (options.lambda < 0.0) throw ValidationError("train_logreg: lambda must be >= 0");
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (y(i) != 0.0 && y(i) != 1.0) throw ValidationError("train_logreg: labels must be 0 or 1");
    }

    LogRegModel model;
    model.scaler = fit_standardizer(X);
    model.lambda = options.lambda;
    const Eigen::MatrixXd Xs = model.scaler.transform(X);

    Eigen::VectorXd w = Eigen::VectorXd::Zero(X.cols());
    double b = 0.0;
    auto obj = logistic_objective(Xs, y, w, b, options.lambda);
    double step = 0.5;  // first trial is 1, a Newton-sized step
    int iter = 0;
    for (; iter < options.max_iter; ++iter) {
        const double gmax = std::max(obj.grad_w.cwiseAbs().maxCoeff(), std::abs(obj.grad_b));
        if (gmax < options.tol) {
            model.converged = true;
            break;
        }
        const Direction dir = preconditioned(Xs, w, b, options.lambda, obj);
        step = std::min(step * 2.0, kMaxStep);
        bool accepted = false;
        while (step >= kMinStep) {
            Eigen::VectorXd w_try = w - step * dir.w;
            const double b_try = b - step * dir.b;
            auto trial = logistic_objective(Xs, y, w_try, b_try, options.lambda);
            if (trial.loss <= obj.loss - kArmijo * step * dir.slope) {
                w = std::move(w_try);
                b = b_try;
                obj = std::move(trial);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;  // no descent possible at machine precision
        if (options.record_loss) model.loss_history.push_back(obj.loss);
    }
    if (!model.converged) {
        const double gmax = std::max(obj.grad_w.cwiseAbs().maxCoeff(), std::abs(obj.grad_b));
        model.converged = gmax < options.tol;
    }
    model.weights = std::move(w);
    model.bias = b;
    model.iterations = iter;
    return model;
}

double predict_proba(const LogRegModel& model, const Eigen::VectorXd& x) {
    if (x.size() != model.width()) {
        throw ValidationError("predict_proba: expected " + std::to_string(model.width()) + " features, got " +
                              std::to_string(x.size()));
    }
    if (!x.allFinite()) throw ValidationError("predict_proba: non-finite input");
    const double z = model.weights.dot(model.scaler.transform_row(x)) + model.bias;
    return clamp_open_unit(sigmoid(z));
}

Eigen::VectorXd predict_proba(const LogRegModel& model, const Eigen::MatrixXd& X) {
    Eigen::VectorXd p(X.rows());
    for (Eigen::Index i = 0; i < X.rows(); ++i) p(i) = predict_proba(model, Eigen::VectorXd(X.row(i).transpose()));
    return p;
}

}  // namespace attnpath
