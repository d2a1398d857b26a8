#pragma once

#include "json.hpp"

#include "qbc/routing.hpp"
#include "qbc/session.hpp"

namespace qbc {

/// Session transcript document; see schemas/session_transcript.schema.json.
nlohmann::ordered_json to_json(const SessionTranscript& transcript);

/// Reservation report document; see schemas/route_report.schema.json.
nlohmann::ordered_json to_json(const routing::ReservationReport& report);

nlohmann::ordered_json to_json(const routing::PathChoice& path);

}  // namespace qbc
