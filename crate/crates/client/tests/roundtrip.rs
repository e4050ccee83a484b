use cluster_tilt_client::{Client, ClientError};
use cluster_tilt_core::api::{ArMode, ObjectRef, VerifyKind, VerifyRequest};
use cluster_tilt_service::{spawn_ephemeral, Config};

#[tokio::test]
async fn typed_calls_against_live_service() {
    let running = spawn_ephemeral(Config::default()).await.unwrap();
    let client = Client::new(format!("{}/", running.url()));

    assert_eq!(client.health().await.unwrap()["status"], "ok");
    assert_eq!(client.check_dynkin("1->2 2->3").await.unwrap().dynkin, "A3");

    let info = client.create_session("1->2 2->3", None).await.unwrap();
    assert_eq!((info.n, info.h, info.objects), (3, 6, 9));
    let id = info.session;

    let ar = client.ar(&id, ArMode::Modules).await.unwrap();
    assert_eq!(ar.vertices.len(), 6);
    assert_eq!(client.all_tilting(&id).await.unwrap().count, 14);

    let start = client.tilting(&id).await.unwrap().tilting;
    let m = client.mutate(&id, ObjectRef::Name("P2".into()), Some(start.summands.clone())).await.unwrap();
    assert_eq!(m.previous, start);
    let endo = client.endo(&id).await.unwrap();
    assert_eq!(endo.presentation.relations.len(), 3);
    assert!(endo.presentation.has_cycles);

    let stale = client.mutate(&id, ObjectRef::Id(m.current.0), Some(start.summands.clone())).await.unwrap_err();
    assert!(matches!(stale, ClientError::Api { status: 409, .. }), "{stale}");
    assert_eq!(stale.code(), "stale_tilting");

    let back = client.mutate(&id, ObjectRef::Id(m.current.0), None).await.unwrap();
    assert_eq!(back.tilting, start);

    let hom = client.hom(&id, &ObjectRef::Name("P3".into()), &ObjectRef::Name("P1".into())).await.unwrap();
    assert_eq!(hom.total, hom.dims.values().sum::<usize>());

    let req = VerifyRequest { quiver: "1->2 2->3".into(), tilting: None, tbar: None, vertex: Some(3) };
    let apr = client.verify(VerifyKind::Apr, &req).await.unwrap();
    assert!(apr.pass);
    assert_eq!(apr.checked, 1);

    let missing = client.session("nope").await.unwrap_err();
    assert_eq!(missing.code(), "unknown_session");

    running.shutdown().await.unwrap();
}

#[tokio::test]
async fn unreachable_service_is_a_transport_error() {
    let running = spawn_ephemeral(Config::default()).await.unwrap();
    let url = running.url();
    running.shutdown().await.unwrap();
    let err = Client::new(url).health().await.unwrap_err();
    assert_eq!(err.code(), "transport_error");
}
