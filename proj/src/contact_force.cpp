#include "ringbot/contact_force.hpp"

#include "ringbot/errors.hpp"

namespace ringbot::contact {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

void ContactModel::validate() const {
  std::visit(Overloaded{[](const PlateDefined& m) {
                          if (!(m.plate_area > 0.0)) throw DomainError("plate area must be > 0");
                        },
                        [](const RingDefined& m) {
                          if (!(m.ring_area > 0.0)) throw DomainError("ring area must be > 0");
                          if (!(m.footprint_area > 0.0)) throw DomainError("footprint area must be > 0");
                          if (!(m.blend >= 0.0 && m.blend <= 1.0)) throw DomainError("blend must lie in [0, 1]");
                        }},
             mode);
  if (spread_area && !(*spread_area > 0.0)) throw DomainError("spread area must be > 0");
  if (!(atmospheric_pressure > 0.0)) throw DomainError("atmospheric pressure must be > 0");
}

double effective_area(const ContactModel& model) {
  return std::visit(Overloaded{[](const PlateDefined& m) { return m.plate_area; },
                               [](const RingDefined& m) {
                                 return m.blend * m.ring_area + (1.0 - m.blend) * m.footprint_area;
                               }},
                    model.mode);
}

double contact_force(const ContactModel& model, double balloon_gauge_pressure) {
  if (balloon_gauge_pressure < 0.0) throw DomainError("balloon gauge pressure must be >= 0");
  return effective_area(model) * balloon_gauge_pressure;
}

double contact_force_absolute(const ContactModel& model, double balloon_absolute_pressure) {
  return contact_force(model, balloon_absolute_pressure - model.atmospheric_pressure);
}

double contact_pressure(const ContactModel& model, double balloon_gauge_pressure) {
  const double force = contact_force(model, balloon_gauge_pressure);
  return force / model.spread_area.value_or(effective_area(model));
}

}  // namespace ringbot::contact
