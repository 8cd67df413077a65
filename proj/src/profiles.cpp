#include "lagns/profiles.hpp"

#include <cmath>

#include "lagns/errors.hpp"

namespace lagns {

std::string_view to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::Equilibrium:
      return "equilibrium";
    case ProfileKind::GaussianBump:
      return "gaussian-bump";
    case ProfileKind::ColdSpot:
      return "cold-spot";
    case ProfileKind::LargeDataComposite:
      return "large-data-composite";
  }
  return "unknown";
}

ProfileKind parse_profile_kind(std::string_view name) {
  if (name == "equilibrium") return ProfileKind::Equilibrium;
  if (name == "gaussian-bump") return ProfileKind::GaussianBump;
  if (name == "cold-spot") return ProfileKind::ColdSpot;
  if (name == "large-data-composite") return ProfileKind::LargeDataComposite;
  throw DomainError("unknown initial profile '" + std::string(name) + "'");
}

std::string_view to_string(Field field) {
  switch (field) {
    case Field::V:
      return "v";
    case Field::U:
      return "u";
    case Field::Theta:
      return "theta";
  }
  return "unknown";
}

Field parse_field(std::string_view name) {
  if (name == "v") return Field::V;
  if (name == "u") return Field::U;
  if (name == "theta") return Field::Theta;
  throw DomainError("unknown field '" + std::string(name) + "' (expected v, u or theta)");
}

double bump(double x, double center, double width) {
  const double s = (x - center) / width;
  return std::exp(-s * s);
}

double odd_bump(double x, double center, double width) {
  static const double kPeak = std::sqrt(2.0 * std::exp(1.0));
  const double s = (x - center) / width;
  return kPeak * s * std::exp(-s * s);
}

InitialProfiles make_profiles(const ProfileSpec& spec) {
  const double c = spec.center;
  const double w = spec.width;
  if (!(w > 0.0)) throw DomainError("profile width must be > 0");
  auto one = [](double) { return 1.0; };
  auto zero = [](double) { return 0.0; };

  switch (spec.kind) {
    case ProfileKind::Equilibrium:
      return {one, zero, one};
    case ProfileKind::GaussianBump: {
      const double a = spec.amplitude;
      auto shifted = [a, c, w](double x) { return 1.0 + a * bump(x, c, w); };
      switch (spec.field) {
        case Field::V:
          return {shifted, zero, one};
        case Field::Theta:
          return {one, zero, shifted};
        case Field::U:
          return {one, [a, c, w](double x) { return a * odd_bump(x, c, w); }, one};
      }
      break;
    }
    case ProfileKind::ColdSpot: {
      const double depth = 1.0 - spec.theta_min;
      return {one, zero, [depth, c, w](double x) { return 1.0 - depth * bump(x, c, w); }};
    }
    case ProfileKind::LargeDataComposite:
      return {[c, w](double x) { return 1.0 + 0.8 * bump(x, c, w); },
              [c, w](double x) { return 0.5 * odd_bump(x, c, w); },
              [c, w](double x) { return 1.0 - 0.5 * bump(x, c, w); }};
  }
  throw DomainError("unhandled initial profile");
}

}  // namespace lagns
