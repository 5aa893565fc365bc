#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace filtrate::media {

/// Structural families of the mobility law mu(v, T):
///   FofV_Talpha:  mu = f(v) T^alpha
///   FofT_Valpha:  mu = f(T) v^alpha
///   PowerLaw:     mu = alpha v^beta T^gamma
///   RatioPower:   mu = alpha (T/v)^beta
///   FofVT_V3mq:   mu = f(vT) v^(3-q)
///   General:      mu = caller-supplied callable
enum class MediumFamily { FofV_Talpha, FofT_Valpha, PowerLaw, RatioPower, FofVT_V3mq, General };

struct MediumLaw {
    MediumFamily family = MediumFamily::PowerLaw;
    double alpha = 1.0;  // prefactor (PowerLaw, RatioPower) or exponent (f-families)
    double beta = 0.0;
    double gamma = 0.0;
    std::function<double(double)> f;   // free function for f-families
    std::function<double(double)> df;  // optional derivative of f (else differenced)
    std::function<double(double, double)> mu_general;
    std::optional<double> q_hint;  // porosity built into a FofVT_V3mq medium

    static MediumLaw power_law(double alpha, double beta, double gamma);
    static MediumLaw ratio_power(double alpha, double beta);
    static MediumLaw of_volume(std::function<double(double)> f, double alpha,
                               std::function<double(double)> df = {});
    static MediumLaw of_temperature(std::function<double(double)> f, double alpha,
                                    std::function<double(double)> df = {});
    static MediumLaw of_vt(std::function<double(double)> f, double q,
                           std::function<double(double)> df = {});
    static MediumLaw general(std::function<double(double, double)> mu);

    void validate() const;
};

/// mu(v, T); throws DomainError for non-positive v or T.
double eval_mobility(const MediumLaw& law, double v, double T);

struct MobilityJet {
    double mu = 0.0;
    double mu_v = 0.0;
    double mu_T = 0.0;
};

/// mu with its first partials (analytic for parametric families; free
/// functions without df fall back to central differences).
MobilityJet mobility_jet(const MediumLaw& law, double v, double T);

enum class Coord { t = 0, x = 1, y = 2, z = 3, v = 4, T = 5 };

enum class GeneratorKind { Translation, Rotation, Scaling };

/// One point-symmetry generator: a translation d/d(axis), a rotation
/// b d/da - a d/db in the (plane_a, plane_b) plane, or a diagonal scaling
/// sum_i scale[i] * coord_i d/d(coord_i).
struct GeneratorDescriptor {
    std::string name;  // X1..X10
    GeneratorKind kind = GeneratorKind::Scaling;
    Coord axis = Coord::t;
    Coord plane_a = Coord::x;
    Coord plane_b = Coord::y;
    std::array<double, 6> scale{};  // (t, x, y, z, v, T)
    bool degenerate = false;        // zero or undefined generator, kept for traceability
    int table_row = 0;              // 0 = base algebra, 1..5 = classification row
    std::string note;

    /// Linear coefficient of coord d/dcoord for scalings, 1 on the axis for
    /// translations, 0 elsewhere. Rotations are not diagonal; use plane_a/b.
    double coefficient(Coord c) const;
};

/// Eight-generator base algebra: translations X1..X4, rotations X5..X7,
/// and the scaling X8 = 2t dt + x dx + y dy + z dz.
std::vector<GeneratorDescriptor> core_generators();

/// X1..X8 plus every classification row the declared structural form of the
/// law matches at porosity q. All matching rows are reported; zero or undefined
/// generators are kept with the degenerate flag set.
std::vector<GeneratorDescriptor> classify_symmetries(const MediumLaw& law, double q);

struct StatePoint {
    double t = 0.0, x = 0.0, y = 0.0, z = 0.0, v = 0.0, T = 0.0;

    double& operator[](Coord c);
    double operator[](Coord c) const;
};

/// Closed-form flow exp(lambda X) applied to a point.
StatePoint generator_flow(const GeneratorDescriptor& gen, double lambda, StatePoint point);

}  // namespace filtrate::media
