#pragma once

#include <string_view>

// Namespace IRIs and the handful of terms the toolkit reads or writes.
namespace nanopub::vocab {

inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kNp = "http://www.nanopub.org/nschema#";
inline constexpr std::string_view kNpx = "http://purl.org/nanopub/x/";
inline constexpr std::string_view kDct = "http://purl.org/dc/terms/";
inline constexpr std::string_view kDce = "http://purl.org/dc/elements/1.1/";
inline constexpr std::string_view kPav = "http://purl.org/pav/";
inline constexpr std::string_view kProv = "http://www.w3.org/ns/prov#";

inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kXsdString = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view kXsdInteger = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr std::string_view kXsdDecimal = "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr std::string_view kXsdDouble = "http://www.w3.org/2001/XMLSchema#double";
inline constexpr std::string_view kXsdBoolean = "http://www.w3.org/2001/XMLSchema#boolean";
inline constexpr std::string_view kXsdDateTime = "http://www.w3.org/2001/XMLSchema#dateTime";

inline constexpr std::string_view kNanopublication = "http://www.nanopub.org/nschema#Nanopublication";
inline constexpr std::string_view kHasAssertion = "http://www.nanopub.org/nschema#hasAssertion";
inline constexpr std::string_view kHasProvenance = "http://www.nanopub.org/nschema#hasProvenance";
inline constexpr std::string_view kHasPublicationInfo = "http://www.nanopub.org/nschema#hasPublicationInfo";

inline constexpr std::string_view kNanopubIndex = "http://purl.org/nanopub/x/NanopubIndex";
inline constexpr std::string_view kIncompleteIndex = "http://purl.org/nanopub/x/IncompleteIndex";
inline constexpr std::string_view kIncludesElement = "http://purl.org/nanopub/x/includesElement";
inline constexpr std::string_view kIncludesSubindex = "http://purl.org/nanopub/x/includesSubindex";
inline constexpr std::string_view kAppendsIndex = "http://purl.org/nanopub/x/appendsIndex";

inline constexpr std::string_view kDctCreated = "http://purl.org/dc/terms/created";
inline constexpr std::string_view kDctCreator = "http://purl.org/dc/terms/creator";
inline constexpr std::string_view kDctTitle = "http://purl.org/dc/terms/title";
inline constexpr std::string_view kDctLicense = "http://purl.org/dc/terms/license";
inline constexpr std::string_view kDctRights = "http://purl.org/dc/terms/rights";
inline constexpr std::string_view kDceCreator = "http://purl.org/dc/elements/1.1/creator";
inline constexpr std::string_view kPavCreatedOn = "http://purl.org/pav/createdOn";
inline constexpr std::string_view kPavCreatedBy = "http://purl.org/pav/createdBy";
inline constexpr std::string_view kPavAuthoredBy = "http://purl.org/pav/authoredBy";
inline constexpr std::string_view kProvWasAttributedTo = "http://www.w3.org/ns/prov#wasAttributedTo";
inline constexpr std::string_view kProvWasDerivedFrom = "http://www.w3.org/ns/prov#wasDerivedFrom";
inline constexpr std::string_view kProvEntity = "http://www.w3.org/ns/prov#Entity";

}  // namespace nanopub::vocab
