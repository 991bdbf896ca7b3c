use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde_json::json;
use tempnet_core::ingest::LineIssue;
use tempnet_core::pipeline::Progress;
use tempnet_core::Error;

/// Lines reported back when an upload does not parse.
pub const MAX_REPORTED_LINES: usize = 10;

#[derive(Debug)]
pub enum ApiError {
    BadRequest(String),
    Malformed { message: String, issues: Vec<LineIssue> },
    Unprocessable(String),
    NotFound(String),
    Timeout { seconds: u64, progress: Option<Progress> },
    Internal(String),
}

impl ApiError {
    pub fn status(&self) -> StatusCode {
        match self {
            ApiError::BadRequest(_) | ApiError::Malformed { .. } => StatusCode::BAD_REQUEST,
            ApiError::Unprocessable(_) => StatusCode::UNPROCESSABLE_ENTITY,
            ApiError::NotFound(_) => StatusCode::NOT_FOUND,
            ApiError::Timeout { .. } => StatusCode::SERVICE_UNAVAILABLE,
            ApiError::Internal(_) => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }

    pub fn malformed(message: impl Into<String>, issues: &[LineIssue]) -> Self {
        ApiError::Malformed {
            message: message.into(),
            issues: issues.iter().take(MAX_REPORTED_LINES).cloned().collect(),
        }
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        match &e {
            Error::NoValidEdges { issues } => ApiError::malformed(e.to_string(), issues),
            Error::EmptyNetwork => ApiError::BadRequest(e.to_string()),
            Error::UnknownCommunity { .. } | Error::NodeNotInCommunity(_) => ApiError::NotFound(e.to_string()),
            Error::EmptySample
            | Error::InvalidSampling(_)
            | Error::InvalidSliceCount { .. }
            | Error::InvalidConfig(_) => ApiError::Unprocessable(e.to_string()),
            Error::EmptyGraph | Error::BelowThreshold { .. } => ApiError::Internal(e.to_string()),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = self.status();
        let body = match self {
            ApiError::BadRequest(m) | ApiError::Unprocessable(m) | ApiError::NotFound(m) | ApiError::Internal(m) => {
                json!({ "error": m })
            }
            ApiError::Malformed { message, issues } => {
                let lines: Vec<usize> = issues.iter().map(|i| i.line).collect();
                json!({ "error": message, "lines": lines, "issues": issues })
            }
            ApiError::Timeout { seconds, progress } => json!({
                "error": format!("analysis did not finish within {seconds} s"),
                "progress": progress,
            }),
        };
        (status, Json(body)).into_response()
    }
}
