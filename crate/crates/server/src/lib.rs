//! HTTP/JSON API over temporal community analyses.
//!
//! Analyses are immutable once built and live in memory under a random id.
//! The JSON payloads are the ones produced by `tempnet_core::views`, so a CLI
//! export and the API agree field for field. See `openapi.yaml`.

mod error;

use std::net::SocketAddr;
use std::sync::{Arc, Mutex};
use std::time::Duration;

use axum::extract::{DefaultBodyLimit, Multipart, Path, Query, State};
use axum::http::HeaderValue;
use axum::routing::{get, post};
use axum::{Json, Router};
use dashmap::DashMap;
use serde::{Deserialize, Serialize};
use tempnet_core::ingest::{parse_edge_list, parse_metadata, IngestOptions, LineIssue};
use tempnet_core::model::BuildReport;
use tempnet_core::taxonomy::{Taxonomy, TaxonomyMatrix};
use tempnet_core::views::{self, CommunityView, GlobalView, Overview};
use tempnet_core::{analyze_with_progress, build_network, AnalysisConfig, AnalysisResult, CommunityKey};
use tower_http::cors::{AllowOrigin, CorsLayer};

pub use error::{ApiError, MAX_REPORTED_LINES};

pub const DEFAULT_PORT: u16 = 8080;
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(120);
const BODY_LIMIT: usize = 512 * 1024 * 1024;

/// Upload configuration: pipeline parameters plus how to read the files.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SessionConfig {
    #[serde(flatten)]
    pub analysis: AnalysisConfig,
    pub ingest: IngestOptions,
}

pub struct AppState {
    analyses: DashMap<String, Arc<AnalysisResult>>,
    timeout: Duration,
}

impl Default for AppState {
    fn default() -> Self {
        AppState::with_timeout(DEFAULT_TIMEOUT)
    }
}

impl AppState {
    pub fn with_timeout(timeout: Duration) -> Self {
        AppState {
            analyses: DashMap::new(),
            timeout,
        }
    }

    /// Stores a finished analysis and returns its id.
    pub fn insert(&self, result: AnalysisResult) -> String {
        let id = uuid::Uuid::new_v4().simple().to_string();
        self.analyses.insert(id.clone(), Arc::new(result));
        id
    }

    pub fn get(&self, id: &str) -> Result<Arc<AnalysisResult>, ApiError> {
        self.analyses
            .get(id)
            .map(|r| Arc::clone(r.value()))
            .ok_or_else(|| ApiError::NotFound(format!("unknown analysis {id:?}")))
    }

    pub fn len(&self) -> usize {
        self.analyses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.analyses.is_empty()
    }
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/api/health", get(health))
        .route("/api/network", post(upload))
        .route("/api/{id}", get(overview))
        .route("/api/{id}/matrix", get(matrix))
        .route("/api/{id}/globalview", get(globalview))
        .route("/api/{id}/community/{slice}/{local}", get(community))
        .route("/api/{id}/node/{slice}/{local}/{node}", get(node))
        .layer(DefaultBodyLimit::max(BODY_LIMIT))
        .layer(cors())
        .with_state(state)
}

/// `TEMPNET_CORS_ORIGIN` restricts CORS to one origin; any origin otherwise.
fn cors() -> CorsLayer {
    let origin = std::env::var("TEMPNET_CORS_ORIGIN")
        .ok()
        .and_then(|o| HeaderValue::from_str(&o).ok())
        .map(AllowOrigin::exact)
        .unwrap_or_else(AllowOrigin::any);
    CorsLayer::new()
        .allow_origin(origin)
        .allow_methods(tower_http::cors::Any)
        .allow_headers(tower_http::cors::Any)
}

/// Port from the `PORT` environment variable, else [`DEFAULT_PORT`].
pub fn port_from_env() -> u16 {
    std::env::var("PORT")
        .ok()
        .and_then(|p| p.parse().ok())
        .unwrap_or(DEFAULT_PORT)
}

pub async fn serve(state: Arc<AppState>, port: u16) -> std::io::Result<()> {
    let addr = SocketAddr::from(([0, 0, 0, 0], port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(state)).await
}

async fn health() -> Json<serde_json::Value> {
    Json(serde_json::json!({ "status": "ok" }))
}

#[derive(Debug, Serialize)]
pub struct UploadResponse {
    pub id: String,
    #[serde(flatten)]
    pub overview: Overview,
    pub build_report: BuildReport,
    pub metadata_issues: Vec<LineIssue>,
}

struct Upload {
    edges: Vec<u8>,
    metadata: Option<Vec<u8>>,
    config: SessionConfig,
}

async fn read_upload(mut multipart: Multipart) -> Result<Upload, ApiError> {
    let bad = |e: axum::extract::multipart::MultipartError| ApiError::BadRequest(e.body_text());
    let mut edges = None;
    let mut metadata = None;
    let mut config = SessionConfig::default();
    while let Some(field) = multipart.next_field().await.map_err(bad)? {
        let name = field.name().unwrap_or_default().to_owned();
        let bytes = field.bytes().await.map_err(bad)?;
        match name.as_str() {
            "edges" => edges = Some(bytes.to_vec()),
            "metadata" => metadata = Some(bytes.to_vec()),
            "config" => {
                config = serde_json::from_slice(&bytes)
                    .map_err(|e| ApiError::Unprocessable(format!("config: {e}")))?;
            }
            other => return Err(ApiError::BadRequest(format!("unexpected field {other:?}"))),
        }
    }
    let edges = edges.ok_or_else(|| ApiError::BadRequest("missing \"edges\" file".into()))?;
    Ok(Upload {
        edges,
        metadata,
        config,
    })
}

async fn upload(State(state): State<Arc<AppState>>, multipart: Multipart) -> Result<Json<UploadResponse>, ApiError> {
    let Upload {
        edges,
        metadata,
        config,
    } = read_upload(multipart).await?;
    config.analysis.validate()?;
    config.ingest.validate()?;

    let parsed = parse_edge_list(&edges, &config.ingest)?;
    if !parsed.issues.is_empty() {
        let msg = format!("{} malformed lines in edge list", parsed.issues.len());
        return Err(ApiError::malformed(msg, &parsed.issues));
    }
    let meta = metadata.as_deref().map(parse_metadata);
    let (net, build_report) = build_network(parsed.edges, meta.as_ref().map(|m| &m.labels))?;

    let progress = Arc::new(Mutex::new(None));
    let seen = Arc::clone(&progress);
    let analysis = config.analysis;
    let job = tokio::task::spawn_blocking(move || {
        analyze_with_progress(&net, &analysis, &|p| *seen.lock().unwrap() = Some(p))
    });
    let result = match tokio::time::timeout(state.timeout, job).await {
        Ok(joined) => joined.map_err(|e| ApiError::Internal(e.to_string()))??,
        Err(_) => {
            // the blocking task cannot be interrupted; its result is dropped
            return Err(ApiError::Timeout {
                seconds: state.timeout.as_secs(),
                progress: *progress.lock().unwrap(),
            });
        }
    };

    let overview = views::overview(&result);
    let id = state.insert(result);
    Ok(Json(UploadResponse {
        id,
        overview,
        build_report,
        metadata_issues: meta.map(|m| m.issues).unwrap_or_default(),
    }))
}

async fn overview(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<Overview>, ApiError> {
    Ok(Json(views::overview(&*state.get(&id)?)))
}

#[derive(Debug, Deserialize)]
struct MatrixQuery {
    x: Option<String>,
    y: Option<String>,
}

async fn matrix(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    Query(q): Query<MatrixQuery>,
) -> Result<Json<TaxonomyMatrix>, ApiError> {
    let r = state.get(&id)?;
    let axis = |v: Option<String>, name: &str| -> Result<Taxonomy, ApiError> {
        let v = v.ok_or_else(|| ApiError::Unprocessable(format!("missing query parameter {name:?}")))?;
        Ok(v.parse()?)
    };
    let x = axis(q.x, "x")?;
    let y = axis(q.y, "y")?;
    Ok(Json(views::matrix_view(&r, x, y)))
}

async fn globalview(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<GlobalView>, ApiError> {
    Ok(Json(views::global_view(&*state.get(&id)?)))
}

fn community_key(slice: &str, local: &str) -> Result<CommunityKey, ApiError> {
    match (slice.parse(), local.parse()) {
        (Ok(s), Ok(l)) => Ok(CommunityKey::new(s, l)),
        _ => Err(ApiError::NotFound(format!("no community ({slice}, {local})"))),
    }
}

async fn community(
    State(state): State<Arc<AppState>>,
    Path((id, slice, local)): Path<(String, String, String)>,
) -> Result<Json<CommunityView>, ApiError> {
    let r = state.get(&id)?;
    let key = community_key(&slice, &local)?;
    let view = tokio::task::spawn_blocking(move || views::community_view(&r, key))
        .await
        .map_err(|e| ApiError::Internal(e.to_string()))??;
    Ok(Json(view))
}

async fn node(
    State(state): State<Arc<AppState>>,
    Path((id, slice, local, node)): Path<(String, String, String, String)>,
) -> Result<Json<tempnet_core::metrics::NodeDetails>, ApiError> {
    let r = state.get(&id)?;
    let key = community_key(&slice, &local)?;
    Ok(Json(views::node_view(&r, key, &node)?))
}
