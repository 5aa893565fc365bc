#include "filtrate/media.hpp"

#include <cmath>

#include "filtrate/errors.hpp"

namespace filtrate::media {

MediumLaw MediumLaw::power_law(double alpha, double beta, double gamma) {
    MediumLaw law;
    law.family = MediumFamily::PowerLaw;
    law.alpha = alpha;
    law.beta = beta;
    law.gamma = gamma;
    law.validate();
    return law;
}

MediumLaw MediumLaw::ratio_power(double alpha, double beta) {
    MediumLaw law;
    law.family = MediumFamily::RatioPower;
    law.alpha = alpha;
    law.beta = beta;
    law.validate();
    return law;
}

MediumLaw MediumLaw::of_volume(std::function<double(double)> f, double alpha,
                               std::function<double(double)> df) {
    MediumLaw law;
    law.family = MediumFamily::FofV_Talpha;
    law.alpha = alpha;
    law.f = std::move(f);
    law.df = std::move(df);
    law.validate();
    return law;
}

MediumLaw MediumLaw::of_temperature(std::function<double(double)> f, double alpha,
                                    std::function<double(double)> df) {
    MediumLaw law;
    law.family = MediumFamily::FofT_Valpha;
    law.alpha = alpha;
    law.f = std::move(f);
    law.df = std::move(df);
    law.validate();
    return law;
}

MediumLaw MediumLaw::of_vt(std::function<double(double)> f, double q,
                           std::function<double(double)> df) {
    MediumLaw law;
    law.family = MediumFamily::FofVT_V3mq;
    law.f = std::move(f);
    law.df = std::move(df);
    law.q_hint = q;
    law.validate();
    return law;
}

MediumLaw MediumLaw::general(std::function<double(double, double)> mu) {
    MediumLaw law;
    law.family = MediumFamily::General;
    law.mu_general = std::move(mu);
    law.validate();
    return law;
}

void MediumLaw::validate() const {
    switch (family) {
        case MediumFamily::PowerLaw:
        case MediumFamily::RatioPower:
            if (!(alpha > 0.0)) throw DomainError("medium: power-law prefactor must be positive");
            break;
        case MediumFamily::FofV_Talpha:
        case MediumFamily::FofT_Valpha:
        case MediumFamily::FofVT_V3mq:
            if (!f) throw DomainError("medium: free-function family needs a callable f");
            break;
        case MediumFamily::General:
            if (!mu_general) throw DomainError("medium: general family needs a callable mu(v,T)");
            break;
    }
}

namespace {

double call_df(const MediumLaw& law, double w) {
    if (law.df) return law.df(w);
    const double h = 1e-6 * std::max(std::fabs(w), 1e-6);
    return (law.f(w + h) - law.f(w - h)) / (2.0 * h);
}

}  // namespace

double eval_mobility(const MediumLaw& law, double v, double T) {
    if (!(v > 0.0) || !(T > 0.0))
        throw DomainError("mobility: v and T must be positive");
    switch (law.family) {
        case MediumFamily::FofV_Talpha:
            return law.f(v) * std::pow(T, law.alpha);
        case MediumFamily::FofT_Valpha:
            return law.f(T) * std::pow(v, law.alpha);
        case MediumFamily::PowerLaw:
            return law.alpha * std::pow(v, law.beta) * std::pow(T, law.gamma);
        case MediumFamily::RatioPower:
            return law.alpha * std::pow(T / v, law.beta);
        case MediumFamily::FofVT_V3mq:
            return law.f(v * T) * std::pow(v, 3.0 - *law.q_hint);
        case MediumFamily::General:
            return law.mu_general(v, T);
    }
    throw DomainError("mobility: unknown medium family");
}

MobilityJet mobility_jet(const MediumLaw& law, double v, double T) {
    MobilityJet jet;
    jet.mu = eval_mobility(law, v, T);
    switch (law.family) {
        case MediumFamily::FofV_Talpha: {
            const double Ta = std::pow(T, law.alpha);
            jet.mu_v = call_df(law, v) * Ta;
            jet.mu_T = law.f(v) * law.alpha * std::pow(T, law.alpha - 1.0);
            break;
        }
        case MediumFamily::FofT_Valpha: {
            const double va = std::pow(v, law.alpha);
            jet.mu_v = law.f(T) * law.alpha * std::pow(v, law.alpha - 1.0);
            jet.mu_T = call_df(law, T) * va;
            break;
        }
        case MediumFamily::PowerLaw:
            jet.mu_v = jet.mu * law.beta / v;
            jet.mu_T = jet.mu * law.gamma / T;
            break;
        case MediumFamily::RatioPower:
            jet.mu_v = -jet.mu * law.beta / v;
            jet.mu_T = jet.mu * law.beta / T;
            break;
        case MediumFamily::FofVT_V3mq: {
            const double w = v * T;
            const double vq = std::pow(v, 3.0 - *law.q_hint);
            const double fp = call_df(law, w);
            jet.mu_v = fp * T * vq + law.f(w) * (3.0 - *law.q_hint) * vq / v;
            jet.mu_T = fp * v * vq;
            break;
        }
        case MediumFamily::General: {
            const double hv = 1e-6 * std::max(std::fabs(v), 1e-6);
            const double hT = 1e-6 * std::max(std::fabs(T), 1e-6);
            jet.mu_v = (law.mu_general(v + hv, T) - law.mu_general(v - hv, T)) / (2.0 * hv);
            jet.mu_T = (law.mu_general(v, T + hT) - law.mu_general(v, T - hT)) / (2.0 * hT);
            break;
        }
    }
    return jet;
}

double GeneratorDescriptor::coefficient(Coord c) const {
    const auto i = static_cast<std::size_t>(c);
    switch (kind) {
        case GeneratorKind::Translation:
            return c == axis ? 1.0 : 0.0;
        case GeneratorKind::Scaling:
            return scale[i];
        case GeneratorKind::Rotation:
            return 0.0;  // off-diagonal; see plane_a / plane_b
    }
    return 0.0;
}

double& StatePoint::operator[](Coord c) {
    switch (c) {
        case Coord::t: return t;
        case Coord::x: return x;
        case Coord::y: return y;
        case Coord::z: return z;
        case Coord::v: return v;
        case Coord::T: return T;
    }
    return t;
}

double StatePoint::operator[](Coord c) const {
    return const_cast<StatePoint&>(*this)[c];
}

namespace {

GeneratorDescriptor translation(std::string name, Coord axis) {
    GeneratorDescriptor g;
    g.name = std::move(name);
    g.kind = GeneratorKind::Translation;
    g.axis = axis;
    return g;
}

GeneratorDescriptor rotation(std::string name, Coord a, Coord b) {
    // b d/da - a d/db
    GeneratorDescriptor g;
    g.name = std::move(name);
    g.kind = GeneratorKind::Rotation;
    g.plane_a = a;
    g.plane_b = b;
    return g;
}

GeneratorDescriptor scaling(std::string name, std::array<double, 6> scale, int row,
                            std::string note = "") {
    GeneratorDescriptor g;
    g.name = std::move(name);
    g.kind = GeneratorKind::Scaling;
    g.scale = scale;
    g.table_row = row;
    g.note = std::move(note);
    bool all_zero = true;
    for (double s : scale) all_zero = all_zero && s == 0.0;
    g.degenerate = all_zero;
    return g;
}

// Classification rows for a law whose declared structure is a pure power
// mu = c v^beta T^gamma (PowerLaw, or RatioPower with beta -> (-beta, beta)).
void append_power_rows(std::vector<GeneratorDescriptor>& out, double beta, double gamma,
                       double q) {
    // Row 1, f(v) = c v^beta with T-exponent gamma.
    out.push_back(scaling("X9", {1.0 + gamma, 0, 0, 0, 0, -1.0}, 1));
    // Row 2, f(T) = c T^gamma with v-exponent beta.
    out.push_back(scaling("X9", {1.0 - beta, 0, 0, 0, 1.0, 0}, 2));
    // Row 3.
    const double bg = beta + gamma;
    if (bg != 0.0) {
        out.push_back(scaling("X9", {1.0, 0, 0, 0, -1.0 / bg, -1.0 / bg}, 3));
    } else {
        auto g = scaling("X9", {0, 0, 0, 0, 0, 0}, 3, "suppressed: beta + gamma = 0");
        g.degenerate = true;
        out.push_back(g);
    }
    out.push_back(scaling("X10", {0, 0, 0, 0, 1.0 + gamma, 1.0 - beta}, 3));
    // Row 4 applies when the law is a pure ratio power (T/v)^b, i.e. gamma = -beta.
    if (gamma == -beta) out.push_back(scaling("X9", {1.0 + gamma, 0, 0, 0, 1.0, 0}, 4));
    // Row 5 applies when v^beta T^gamma = f(vT) v^(3-q) with f a power of vT.
    const double q_match = 3.0 + gamma - beta;
    if (std::fabs(q - q_match) <= 1e-12 * std::max(1.0, std::fabs(q)))
        out.push_back(scaling("X9", {q - 1.0, 0, 0, 0, 1.0, -1.0}, 5));
}

}  // namespace

std::vector<GeneratorDescriptor> core_generators() {
    std::vector<GeneratorDescriptor> out;
    out.push_back(translation("X1", Coord::x));
    out.push_back(translation("X2", Coord::y));
    out.push_back(translation("X3", Coord::z));
    out.push_back(translation("X4", Coord::t));
    out.push_back(rotation("X5", Coord::x, Coord::y));
    out.push_back(rotation("X6", Coord::x, Coord::z));
    out.push_back(rotation("X7", Coord::y, Coord::z));
    out.push_back(scaling("X8", {2.0, 1.0, 1.0, 1.0, 0, 0}, 0));
    return out;
}

std::vector<GeneratorDescriptor> classify_symmetries(const MediumLaw& law, double q) {
    law.validate();
    std::vector<GeneratorDescriptor> out = core_generators();
    switch (law.family) {
        case MediumFamily::FofV_Talpha:
            out.push_back(scaling("X9", {1.0 + law.alpha, 0, 0, 0, 0, -1.0}, 1));
            break;
        case MediumFamily::FofT_Valpha:
            out.push_back(scaling("X9", {1.0 - law.alpha, 0, 0, 0, 1.0, 0}, 2));
            break;
        case MediumFamily::PowerLaw:
            append_power_rows(out, law.beta, law.gamma, q);
            break;
        case MediumFamily::RatioPower:
            append_power_rows(out, -law.beta, law.beta, q);
            break;
        case MediumFamily::FofVT_V3mq: {
            const bool matches =
                !law.q_hint ||
                std::fabs(*law.q_hint - q) <= 1e-12 * std::max(1.0, std::fabs(q));
            if (matches) out.push_back(scaling("X9", {q - 1.0, 0, 0, 0, 1.0, -1.0}, 5));
            break;
        }
        case MediumFamily::General:
            break;
    }
    return out;
}

StatePoint generator_flow(const GeneratorDescriptor& gen, double lambda, StatePoint point) {
    switch (gen.kind) {
        case GeneratorKind::Translation:
            point[gen.axis] += lambda;
            return point;
        case GeneratorKind::Rotation: {
            // d a / d lambda = b, d b / d lambda = -a.
            const double a0 = point[gen.plane_a];
            const double b0 = point[gen.plane_b];
            const double c = std::cos(lambda);
            const double s = std::sin(lambda);
            point[gen.plane_a] = a0 * c + b0 * s;
            point[gen.plane_b] = b0 * c - a0 * s;
            return point;
        }
        case GeneratorKind::Scaling: {
            for (std::size_t i = 0; i < 6; ++i)
                if (gen.scale[i] != 0.0)
                    point[static_cast<Coord>(i)] *= std::exp(gen.scale[i] * lambda);
            return point;
        }
    }
    return point;
}

}  // namespace filtrate::media
